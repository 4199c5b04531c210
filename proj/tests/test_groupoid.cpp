#include <random>

#include "action_oracles.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "stackt/action.hpp"
#include "stackt/groupoid.hpp"

using namespace stackt;

namespace {

// Disjoint union a + b: objects and arrows of b are shifted past those of a.
FiniteGroupoid sum(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const auto na = static_cast<ObjectId>(a.num_objects());
  const auto ma = static_cast<ArrowId>(a.num_arrows());
  std::vector<ArrowEnds> arrows = a.arrows();
  for (auto e : b.arrows()) arrows.push_back({e.source + na, e.target + na});
  std::vector<ArrowId> ids = a.identities();
  for (auto i : b.identities()) ids.push_back(i + ma);
  return FiniteGroupoid::build(a.num_objects() + b.num_objects(), arrows, ids,
                               [&](ArrowId f, ArrowId g) {
                                 return f < ma ? a.compose(g, f) : b.compose(g - ma, f - ma) + ma;
                               });
}

FiniteGroupoid b0(const FiniteGroup& g) { return b0_groupoid(g); }

std::vector<GroupoidPtr> small_fixtures() {
  return {share(discrete_groupoid(1)),
          share(discrete_groupoid(2)),
          share(pair_groupoid(3)),
          share(b0(cyclic(2))),
          share(b0(cyclic(3))),
          share(sum(b0(cyclic(2)), discrete_groupoid(1))),
          share(product_groupoid(pair_groupoid(2), b0(cyclic(2))))};
}

GroupoidPtr random_relabel(const FiniteGroupoid& g, std::mt19937& rng) {
  auto op = oracle::random_permutation(g.num_objects(), rng);
  auto ap = oracle::random_permutation(g.num_arrows(), rng);
  return share(relabel(g, op, ap));
}

}  // namespace

TEST_CASE("standard groupoids validate and have the expected shape") {
  CHECK(validate_groupoid(discrete_groupoid(3)).ok());
  CHECK(discrete_groupoid(3).num_arrows() == 3);
  auto p = pair_groupoid(3);
  CHECK(validate_groupoid(p).ok());
  CHECK(p.num_arrows() == 9);
  for (ObjectId x = 0; x < 3; ++x)
    for (ObjectId y = 0; y < 3; ++y) CHECK(p.hom(x, y).size() == 1);

  CHECK(b0(trivial_group()) == discrete_groupoid(1));
  auto z2 = b0(cyclic(2));
  CHECK(z2.num_arrows() == 2);
  CHECK(z2.composition_entries().size() == 4);
  CHECK(b0(quaternion_group()).num_arrows() == 8);
  CHECK(validate_groupoid(b0(quaternion_group())).ok());
}

TEST_CASE("hom sets agree with a linear scan") {
  for (const auto& g : small_fixtures()) {
    for (ObjectId x = 0; x < g->num_objects(); ++x) {
      for (ObjectId y = 0; y < g->num_objects(); ++y) {
        auto h = g->hom(x, y);
        CHECK(std::vector<ArrowId>(h.begin(), h.end()) == oracle::hom_scan(*g, x, y));
      }
    }
  }
}

TEST_CASE("product with the terminal groupoid is isomorphic to the factor") {
  for (const auto& g : small_fixtures()) {
    auto p = product_groupoid(*g, discrete_groupoid(1));
    CHECK(p == *g);
  }
}

TEST_CASE("malformed groupoid tables") {
  std::vector<ArrowEnds> arrows = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(FiniteGroupoid(1, arrows, {0}, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}}),
                  MalformedError);
  CHECK_THROWS_AS(FiniteGroupoid(1, arrows, {0}, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 5}}),
                  MalformedError);
  CHECK_THROWS_AS(FiniteGroupoid(1, {{0, 1}}, {0}, {}), MalformedError);
  CHECK_THROWS_AS(
      FiniteGroupoid(1, arrows, {0}, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 0}}),
      MalformedError);
  CHECK_NOTHROW(FiniteGroupoid(1, arrows, {0}, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
}

TEST_CASE("every single composition-table mutation of a small groupoid is reported") {
  for (const auto& g : {b0(cyclic(3)), pair_groupoid(2), b0(direct_product(cyclic(2), cyclic(2)))}) {
    auto entries = g.composition_entries();
    std::size_t mutants = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      for (ArrowId v = 0; v < g.num_arrows(); ++v) {
        if (v == entries[i].result) continue;
        auto m = entries;
        m[i].result = v;
        FiniteGroupoid bad(g.num_objects(), g.arrows(), g.identities(), m);
        CHECK_FALSE(validate_groupoid(bad).ok());
        CHECK_FALSE(oracle::groupoid_axioms(bad));
        ++mutants;
      }
    }
    CHECK(mutants > 0);
  }
}

TEST_CASE("functors and natural isomorphisms") {
  auto z4 = share(b0(cyclic(4)));
  GroupoidFunctor neg{z4, z4, {0}, {0, 3, 2, 1}};
  CHECK(validate_functor(neg).ok());
  GroupoidFunctor bad{z4, z4, {0}, {0, 2, 2, 1}};
  CHECK_FALSE(validate_functor(bad).ok());
  CHECK_THROWS_AS(validate_functor(GroupoidFunctor{z4, z4, {0}, {0, 1}}), MalformedError);

  // Inner automorphisms of an abelian group are trivial, so negation is not
  // naturally isomorphic to the identity.
  CHECK_FALSE(find_natural_iso(identity_functor(z4), neg).has_value());
  auto q = share(b0(quaternion_group()));
  GroupoidFunctor conj{q, q, {0}, {}};
  auto qg = quaternion_group();
  for (Element a = 0; a < 8; ++a) conj.arrow_map.push_back(qg.mul(qg.mul(2, a), qg.inverse(2)));
  CHECK(validate_functor(conj).ok());
  auto eta = find_natural_iso(identity_functor(q), conj);
  REQUIRE(eta.has_value());
  CHECK(validate_nat_iso(*eta).ok());

  auto p = share(pair_groupoid(3));
  auto c = constant_functor(p, p, 1);
  auto eta2 = find_natural_iso(identity_functor(p), c);
  REQUIRE(eta2.has_value());
  CHECK(validate_nat_iso(*eta2).ok());
  NaturalIso wrong = *eta2;
  wrong.components[0] = p->identity(0);
  CHECK_FALSE(validate_nat_iso(wrong).ok());
}

TEST_CASE("skeletons") {
  auto p3 = share(pair_groupoid(3));
  auto s = skeletonize(p3);
  CHECK(*s.groupoid == discrete_groupoid(1));
  for (const auto& g : small_fixtures()) {
    auto sk = skeletonize(g);
    CHECK(sk.groupoid->num_objects() == oracle::count_classes(*g));
    CHECK(validate_groupoid(*sk.groupoid).ok());
    CHECK(validate_functor(sk.collapse).ok());
    CHECK(validate_functor(sk.include).ok());
    CHECK(is_equivalence(sk.collapse));
    CHECK(is_equivalence(sk.include));
    auto twice = skeletonize(sk.groupoid);
    CHECK(*twice.groupoid == *sk.groupoid);
  }
}

TEST_CASE("equivalence decisions match brute force on tiny groupoids") {
  auto pair3 = share(pair_groupoid(3));
  auto term = share(discrete_groupoid(1));
  auto r = check_equivalence(pair3, term);
  CHECK(r.verdict == Verdict::kTrue);
  REQUIRE(r.witness.has_value());
  CHECK(is_equivalence(*r.witness));

  auto b0z2 = share(b0(cyclic(2)));
  auto d2 = share(discrete_groupoid(2));
  CHECK(check_equivalence(b0z2, d2).verdict == Verdict::kFalse);
  CHECK_FALSE(oracle::brute_force_equivalent(*b0z2, *d2));
  CHECK_FALSE(oracle::brute_force_equivalent(*d2, *b0z2));

  std::vector<GroupoidPtr> tiny = {term, d2, b0z2, share(b0(cyclic(3))), share(pair_groupoid(2)),
                                   share(sum(b0(cyclic(2)), discrete_groupoid(1)))};
  for (const auto& a : tiny) {
    for (const auto& b : tiny) {
      auto v = check_equivalence(a, b);
      bool expect = oracle::brute_force_equivalent(*a, *b);
      CHECK(v.verdict == (expect ? Verdict::kTrue : Verdict::kFalse));
      if (v.witness) CHECK(is_equivalence(*v.witness));
    }
  }
}

TEST_CASE("equivalence is reflexive, symmetric and transitive on fixtures") {
  auto fx = small_fixtures();
  fx.push_back(share(sum(discrete_groupoid(1), b0(cyclic(2)))));
  fx.push_back(share(b0(cyclic(4))));
  fx.push_back(share(b0(direct_product(cyclic(2), cyclic(2)))));
  fx.push_back(share(product_groupoid(pair_groupoid(3), b0(cyclic(3)))));
  const auto n = fx.size();
  std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto r = check_equivalence(fx[i], fx[j]);
      REQUIRE(r.verdict != Verdict::kIndeterminate);
      eq[i][j] = r.verdict == Verdict::kTrue;
      if (eq[i][j]) CHECK(is_equivalence(*r.witness));
    }
  }
  for (std::size_t i = 0; i < n; ++i) CHECK(eq[i][i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) CHECK(eq[i][j] == eq[j][i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (eq[i][j] && eq[j][k]) CHECK(eq[i][k]);
  CHECK(eq[0][2]);      // terminal ~ pair(3)
  CHECK(eq[5][7]);      // the two orders of the disjoint union
  CHECK_FALSE(eq[8][9]);  // Z/4 vs Z/2 x Z/2
}

TEST_CASE("the witness is invertible up to natural isomorphism") {
  auto a = share(product_groupoid(pair_groupoid(2), b0(cyclic(3))));
  auto b = share(b0(cyclic(3)));
  auto f = check_equivalence(a, b).witness;
  auto g = check_equivalence(b, a).witness;
  REQUIRE(f);
  REQUIRE(g);
  CHECK(find_natural_iso(compose_functors(*g, *f), identity_functor(a)).has_value());
  CHECK(find_natural_iso(compose_functors(*f, *g), identity_functor(b)).has_value());
}

TEST_CASE("equivalence verdicts are invariant under relabeling") {
  std::mt19937 rng(11);
  auto fx = small_fixtures();
  for (int trial = 0; trial < 30; ++trial) {
    const auto& a = fx[rng() % fx.size()];
    const auto& b = fx[rng() % fx.size()];
    auto before = check_equivalence(a, b).verdict;
    auto after = check_equivalence(random_relabel(*a, rng), random_relabel(*b, rng)).verdict;
    CHECK(before == after);
    auto ra = random_relabel(*a, rng);
    CHECK(validate_groupoid(*ra).ok());
    CHECK(check_equivalence(a, ra).verdict == Verdict::kTrue);
  }
}

TEST_CASE("for_each_equivalence covers the automorphisms of b0(Q) up to inner ones") {
  auto q = share(b0(quaternion_group()));
  std::size_t n = 0;
  auto v = for_each_equivalence(q, q, kDefaultBudget, [&](const GroupoidFunctor& f) {
    CHECK(is_equivalence(f));
    ++n;
    return true;
  });
  CHECK(v == Verdict::kTrue);
  CHECK(n == 24);
}

TEST_CASE("a tiny budget gives an indeterminate verdict, never a wrong one") {
  auto a = share(b0(quaternion_group()));
  auto r = check_equivalence(a, a, 1);
  CHECK(r.verdict != Verdict::kFalse);
}

TEST_CASE("the groupoid oracle accepts the fixtures") {
  for (const auto& g : small_fixtures()) {
    CHECK(validate_groupoid(*g).ok());
    CHECK(oracle::groupoid_axioms(*g));
  }
}

TEST_CASE("isom_set") {
  CHECK(isom_set(b0(cyclic(4)), 0, 0).size() == 4);
  CHECK(isom_set(discrete_groupoid(2), 0, 1).empty());
  for (const auto& g : small_fixtures()) {
    for (ObjectId x = 0; x < g->num_objects(); ++x) {
      for (ObjectId y = 0; y < g->num_objects(); ++y) CHECK(isom_set(*g, x, y) == oracle::hom_scan(*g, x, y));
      auto self = isom_set(*g, x, x);
      CHECK(std::find(self.begin(), self.end(), g->identity(x)) != self.end());
    }
  }
  CHECK_THROWS_AS(isom_set(pair_groupoid(2), 0, 2), std::out_of_range);
  CHECK_THROWS_AS(isom_set(discrete_groupoid(0), 0, 0), std::out_of_range);
}
