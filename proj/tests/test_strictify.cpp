#include <random>

#include "action_oracles.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "stackt/fixtures.hpp"
#include "stackt/strictify.hpp"

using namespace stackt;

namespace {

GroupPtr z(std::size_t n) { return make_group(cyclic(n)); }

// The weak Z/2 action on pair(2) obtained by transporting the trivial action
// along j_e^x = the arrow x -> 1-x and j_s^x = identity.
ActionPtr transported_pair_trivial() {
  auto m = share(pair_groupoid(2));
  auto t = trivial_action(z(2), m);
  // pair(2) arrows: x -> y has index 2x + y.
  std::vector<ArrowId> j = {1, 2, 0, 3};
  return share(transport_action_pointwise(t, j));
}

// Composition in M^str recomputed from the raw tables.
void check_composition_formula(const StrictificationResult& r) {
  const auto& a = *r.input;
  const auto& G = a.group();
  oracle::Arrows M(a.space());
  const auto& s = *r.strict_space;
  for (const auto& e : s.composition_entries()) {
    const auto& p = r.arrows[e.first];
    const auto& q = r.arrows[e.second];
    auto [g, x] = r.pair_of(p.source);
    auto [h, y] = r.pair_of(p.target);
    auto [k, zz] = r.pair_of(q.target);
    const auto gh = G.mul(G.inverse(g), h);
    const auto hk = G.mul(G.inverse(h), k);
    auto expect = M.comp(a.alpha(gh, hk, zz), M.comp(a.act_arrow(gh, q.underlying), p.underlying));
    REQUIRE(expect >= 0);
    const auto& out = r.arrows[e.result];
    CHECK(out.source == p.source);
    CHECK(out.target == q.target);
    CHECK(static_cast<long long>(out.underlying) == expect);
  }
}

// hom((g,x),(h,y)) against hom_M(x, (g^-1 h).y), both by linear scan.
void check_hom_bijection(const StrictificationResult& r) {
  const auto& a = *r.input;
  const auto& G = a.group();
  const auto& s = *r.strict_space;
  for (ObjectId p = 0; p < s.num_objects(); ++p) {
    for (ObjectId q = 0; q < s.num_objects(); ++q) {
      auto [g, x] = r.pair_of(p);
      auto [h, y] = r.pair_of(q);
      auto base = oracle::hom_scan(a.space(), x, a.act(G.mul(G.inverse(g), h), y));
      std::vector<ArrowId> reps;
      for (auto f : oracle::hom_scan(s, p, q)) reps.push_back(r.arrows[f].underlying);
      std::sort(reps.begin(), reps.end());
      CHECK(reps == base);
    }
  }
}

void check_result(const StrictificationResult& r) {
  const auto& a = *r.input;
  CHECK(validate_groupoid(*r.strict_space).ok());
  CHECK(validate_action(*r.strict_action).ok());
  CHECK(oracle::action_axioms(*r.strict_action));
  CHECK(r.strict_action->is_strict());
  CHECK(r.strict_space->num_objects() == a.group_order() * a.num_objects());
  CHECK(validate_g_morphism(r.u).ok());
  CHECK(oracle::g_morphism_axioms(*r.strict_action, a, r.u.functor, r.u.sigma));
  CHECK(is_equivalence(r.u.functor));
  CHECK(check_equivalence(r.strict_space, a.space_ptr()).verdict == Verdict::kTrue);
  // u(e, x) = e.x, reached from x through the unit component.
  for (ObjectId x = 0; x < a.num_objects(); ++x) {
    const auto ux = r.u.functor.on_object(r.object_of(0, x));
    CHECK(ux == a.act(0, x));
    CHECK(oracle::Arrows(a.space()).typed(a.unit(x), ux, x));
  }
}

}  // namespace

TEST_CASE("trivial Z/2 action on the terminal groupoid") {
  auto a = share(trivial_action(z(2), share(discrete_groupoid(1))));
  auto r = strictify(a);
  const auto& s = *r.strict_space;
  REQUIRE(s.num_objects() == 2);
  for (ObjectId p = 0; p < 2; ++p)
    for (ObjectId q = 0; q < 2; ++q) CHECK(s.hom(p, q).size() == 1);
  CHECK(r.strict_action->act(1, 0) == 1);
  CHECK(r.strict_action->act(1, 1) == 0);
  CHECK(check_equivalence(r.strict_space, share(discrete_groupoid(1))).verdict == Verdict::kTrue);
  check_result(r);
}

TEST_CASE("strict inputs give identity sigma and u(phi) = g.phi") {
  for (const auto& [name, a] : fixtures::catalogue()) {
    CAPTURE(name);
    REQUIRE(a->is_strict());
    auto r = strictify(a);
    check_result(r);
    for (auto s : r.u.sigma) CHECK(a->space().is_identity(s));
    for (ArrowId f = 0; f < r.arrows.size(); ++f) {
      auto g = r.pair_of(r.arrows[f].source).first;
      CHECK(r.u.functor.on_arrow(f) == a->act_arrow(g, r.arrows[f].underlying));
    }
    check_composition_formula(r);
    check_hom_bijection(r);
  }
}

TEST_CASE("transported trivial Z/2 action on pair(2)") {
  auto a = transported_pair_trivial();
  REQUIRE(validate_action(*a).ok());
  REQUIRE_FALSE(a->is_strict());
  auto r = strictify(a);
  check_result(r);
  check_composition_formula(r);
  check_hom_bijection(r);
}

TEST_CASE("identities of M^str are inverse unit components") {
  auto a = transported_pair_trivial();
  auto r = strictify(a);
  for (ObjectId p = 0; p < r.strict_space->num_objects(); ++p) {
    auto x = r.pair_of(p).second;
    CHECK(r.arrows[r.strict_space->identity(p)].underlying == a->space().inverse(a->unit(x)));
  }
}

TEST_CASE("strictification on the weak corpus") {
  auto corpus = fixtures::weak_corpus(20261015, 60);
  std::size_t weak = 0;
  for (const auto& [name, a] : corpus) {
    CAPTURE(name);
    REQUIRE(validate_action(*a).ok());
    weak += !a->is_strict();
    auto r = strictify(a);
    check_result(r);
    if (r.strict_space->num_arrows() <= 4000) {
      check_composition_formula(r);
      check_hom_bijection(r);
    }
  }
  CHECK(weak >= corpus.size() / 2);
}

TEST_CASE("corpus is deterministic") {
  auto a = fixtures::weak_corpus(7, 10);
  auto b = fixtures::weak_corpus(7, 10);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(*a[i].action == *b[i].action);
  }
}

TEST_CASE("invalid input is rejected") {
  auto a = transported_pair_trivial();
  auto alpha = a->alpha_table();
  std::swap(alpha[3][0], alpha[3][1]);
  std::vector<GroupoidFunctor> mu = {a->mu(0), a->mu(1)};
  auto bad = share(WeakAction(a->group_ptr(), a->space_ptr(), mu, alpha, a->unit_table()));
  REQUIRE_FALSE(validate_action(*bad).ok());
  CHECK_THROWS_AS(strictify(bad), InvalidInput);
}

TEST_CASE("strictification is functorial on G-morphisms") {
  std::mt19937 rng(99);
  std::vector<GMorphism> morphisms;
  for (const auto& [name, a] : fixtures::catalogue()) {
    auto j = fixtures::random_pointwise_transport(*a, rng);
    auto t = share(transport_action_pointwise(*a, j));
    morphisms.push_back(GMorphism{t, a, identity_functor(a->space_ptr()), j});
    morphisms.push_back(identity_g_morphism(t));
  }
  // A non-invertible one: the projection of a product onto a point.
  auto z2 = z(2);
  auto swap = share(action_from_gset(z2, {{0, 1}, {1, 0}}));
  auto point = share(trivial_action(z2, share(discrete_groupoid(1))));
  auto to_point = constant_functor(swap->space_ptr(), point->space_ptr(), 0);
  auto found = find_equivariance(swap, point, to_point);
  REQUIRE(found.verdict == Verdict::kTrue);
  morphisms.push_back(*found.witness);

  for (const auto& m : morphisms) {
    REQUIRE(validate_g_morphism(m).ok());
    auto sa = strictify(m.source);
    auto sb = strictify(m.target);
    auto f = induced_strict_morphism(sa, sb, m);
    CHECK(validate_g_morphism(f).ok());
    CHECK(oracle::g_morphism_axioms(*f.source, *f.target, f.functor, f.sigma));
    for (ObjectId p = 0; p < sa.strict_space->num_objects(); ++p) {
      auto [g, x] = sa.pair_of(p);
      CHECK(f.functor.on_object(p) == sb.object_of(g, m.functor.on_object(x)));
    }
    auto square = strictification_square(sa, sb, m, f);
    CHECK(validate_2g_morphism(square).ok());
    CHECK(oracle::two_morphism_axioms(square));
  }
}

TEST_CASE("a corrupted square component is caught") {
  auto a = transported_pair_trivial();
  auto base = share(trivial_action(z(2), a->space_ptr()));
  GMorphism m{a, base, identity_functor(a->space_ptr()), {1, 2, 0, 3}};
  REQUIRE(validate_g_morphism(m).ok());
  auto sa = strictify(a);
  auto sb = strictify(base);
  auto f = induced_strict_morphism(sa, sb, m);
  auto square = strictification_square(sa, sb, m, f);
  REQUIRE(validate_2g_morphism(square).ok());
  square.tau[0] = a->space().identity(0) == square.tau[0] ? 1 : a->space().identity(0);
  CHECK_FALSE(validate_2g_morphism(square).ok());
  CHECK_FALSE(oracle::two_morphism_axioms(square));
}
