#include <random>

#include "action_oracles.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "stackt/action.hpp"

using namespace stackt;

namespace {

GroupPtr z(std::size_t n) { return make_group(cyclic(n)); }

ArrowId random_out_arrow(const FiniteGroupoid& m, ObjectId x, std::mt19937& rng) {
  auto out = m.out_arrows(x);
  return out[rng() % out.size()];
}

std::vector<ArrowId> random_object_transport(const WeakAction& a, std::mt19937& rng) {
  std::vector<ArrowId> j;
  for (ObjectId x = 0; x < a.num_objects(); ++x) j.push_back(random_out_arrow(a.space(), x, rng));
  return j;
}

std::vector<ArrowId> random_pointwise_transport(const WeakAction& a, std::mt19937& rng) {
  std::vector<ArrowId> j;
  for (Element g = 0; g < a.group_order(); ++g)
    for (ObjectId x = 0; x < a.num_objects(); ++x)
      j.push_back(random_out_arrow(a.space(), a.act(g, x), rng));
  return j;
}

WeakAction z4_negation() { return twist_action(automorphism_group(z(4))); }

WeakAction quaternion_twist() {
  auto q = make_group(quaternion_group());
  return twist_action(conjugation_action(q, center(*q)));
}

std::vector<ActionPtr> base_actions() {
  auto s3 = make_group(symmetric_group(3));
  std::vector<ActionPtr> out = {
      share(trivial_action(z(2), share(discrete_groupoid(1)))),
      share(trivial_action(z(2), share(b0_groupoid(cyclic(2))))),
      share(trivial_action(z(3), share(pair_groupoid(2)))),
      share(action_from_gset(z(2), {{0, 1}, {1, 0}})),
      share(left_translation_action(s3)),
      share(z4_negation()),
      share(quaternion_twist()),
      share(product_action(action_from_gset(z(2), {{0, 1}, {1, 0}}),
                           trivial_action(z(2), share(b0_groupoid(cyclic(3)))))),
  };
  return out;
}

std::vector<ActionPtr> weak_actions(std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<ActionPtr> out;
  for (const auto& a : base_actions()) {
    out.push_back(a);
    out.push_back(share(transport_action(*a, random_object_transport(*a, rng))));
    out.push_back(share(transport_action_pointwise(*a, random_pointwise_transport(*a, rng))));
  }
  return out;
}


}  // namespace

TEST_CASE("strict actions validate and have identity coherence data") {
  for (const auto& a : base_actions()) {
    CHECK(validate_action(*a).ok());
    CHECK(oracle::action_axioms(*a));
    CHECK(a->is_strict());
  }
  auto t = trivial_action(z(3), share(discrete_groupoid(1)));
  for (Element g = 0; g < 3; ++g) CHECK(t.mu(g) == identity_functor(t.space_ptr()));
}

TEST_CASE("the negation twist on b0(Z/4) sends arrow 1 to arrow 3") {
  auto a = z4_negation();
  CHECK(a.act_arrow(1, 1) == 3);
  CHECK(a.act_arrow(1, 2) == 2);
  CHECK(a.act_arrow(0, 1) == 1);
}

TEST_CASE("a trivial automorphism subgroup gives the trivial action") {
  AutomorphismAction triv{z(2), z(4), {{0, 1, 2, 3}, {0, 1, 2, 3}}};
  auto a = twist_action(triv);
  CHECK(a == trivial_action(z(2), share(b0_groupoid(cyclic(4)))));
}

TEST_CASE("twists that are not actions by automorphisms are rejected") {
  AutomorphismAction bad{z(2), z(4), {{0, 1, 2, 3}, {0, 2, 1, 3}}};
  CHECK_THROWS_AS(twist_action(bad), std::invalid_argument);
  CHECK_THROWS_AS(action_from_gset(z(2), {{0, 1}, {0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(action_from_gset(z(3), {{0, 1}, {1, 0}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("Z/2 swapping two points") {
  auto a = action_from_gset(z(2), {{0, 1}, {1, 0}});
  CHECK(a.act(1, 0) == 1);
  CHECK(a.act(1, 1) == 0);
  CHECK(validate_action(a).ok());
}

TEST_CASE("family shape errors raise") {
  auto m = share(discrete_groupoid(2));
  auto g = z(2);
  std::vector<GroupoidFunctor> mu(2, identity_functor(m));
  std::vector<std::vector<ArrowId>> alpha(4, std::vector<ArrowId>{0, 1});
  CHECK_NOTHROW(WeakAction(g, m, mu, alpha, {0, 1}));
  CHECK_THROWS_AS(WeakAction(g, m, {identity_functor(m)}, alpha, {0, 1}), MalformedError);
  CHECK_THROWS_AS(WeakAction(g, m, mu, {alpha.begin(), alpha.end() - 1}, {0, 1}), MalformedError);
  CHECK_THROWS_AS(WeakAction(g, m, mu, alpha, {0}), MalformedError);
  auto bad = alpha;
  bad[1] = {0, 7};
  CHECK_THROWS_AS(WeakAction(g, m, mu, bad, {0, 1}), MalformedError);
}

TEST_CASE("transported actions validate") {
  for (std::uint32_t seed = 1; seed <= 5; ++seed) {
    for (const auto& a : weak_actions(seed)) {
      CHECK(validate_action(*a).ok());
      CHECK(oracle::action_axioms(*a));
    }
  }
}

TEST_CASE("transport produces genuinely weak actions") {
  std::mt19937 rng(3);
  auto a = trivial_action(z(2), share(pair_groupoid(2)));
  std::size_t weak = 0;
  for (int i = 0; i < 10; ++i) {
    auto t = transport_action_pointwise(a, random_pointwise_transport(a, rng));
    weak += !t.is_strict();
  }
  CHECK(weak > 0);
}

TEST_CASE("transport along identities is the identity") {
  for (const auto& a : base_actions()) {
    CHECK(transport_action(*a, a->space().identities()) == *a);
  }
}

TEST_CASE("transport along j then along j inverse recovers the input") {
  std::mt19937 rng(5);
  for (const auto& a : weak_actions(9)) {
    const auto& m = a->space();
    // j must permute objects for the inverse family to be indexed by them.
    auto perm_ok = [&](const std::vector<ArrowId>& j) {
      std::vector<char> hit(m.num_objects(), 0);
      for (auto f : j) hit[m.target(f)] = 1;
      return std::find(hit.begin(), hit.end(), 0) == hit.end();
    };
    std::vector<ArrowId> j;
    do {
      j = random_object_transport(*a, rng);
    } while (!perm_ok(j));
    std::vector<ArrowId> back(m.num_objects());
    for (ObjectId x = 0; x < m.num_objects(); ++x) back[m.target(j[x])] = m.inverse(j[x]);
    auto there = transport_action(*a, j);
    CHECK(transport_action(there, back) == *a);
  }
}

TEST_CASE("non-invertible or mistyped transport components raise") {
  auto a = trivial_action(z(2), share(pair_groupoid(2)));
  // Arrow 1 is 0 -> 1; it cannot serve as the component at object 1.
  CHECK_THROWS_AS(transport_action(a, {0, 1}), MalformedError);
  CHECK_THROWS_AS(transport_action(a, {0}), MalformedError);
}

TEST_CASE("a transported action is G-isomorphic to the original via (Id, j)") {
  std::mt19937 rng(21);
  for (const auto& base : base_actions()) {
    auto j = random_pointwise_transport(*base, rng);
    auto t = share(transport_action_pointwise(*base, j));
    GMorphism back{t, base, identity_functor(base->space_ptr()), j};
    CHECK(validate_g_morphism(back).ok());
    CHECK(oracle::g_morphism_axioms(*t, *base, back.functor, back.sigma));
    CHECK(is_g_isomorphism(back));
    auto eq = actions_equivalent(base, t);
    CHECK(eq.verdict == Verdict::kTrue);
    REQUIRE(eq.witness);
    CHECK(oracle::g_morphism_axioms(*base, *t, eq.witness->functor, eq.witness->sigma));
  }
}

TEST_CASE("lax presheaf translation") {
  for (const auto& a : weak_actions(4)) {
    auto p = to_lax_presheaf(*a);
    CHECK(validate_lax_presheaf(p).ok());
    CHECK(from_lax_presheaf(p) == *a);
    const auto& G = a->group();
    for (Element g = 0; g < G.order(); ++g) {
      CHECK(p.functors[g] == a->mu(G.inverse(g)));
      for (Element h = 0; h < G.order(); ++h) {
        for (ObjectId x = 0; x < a->num_objects(); ++x) {
          CHECK(p.comparison(g, h, x) == a->alpha(G.inverse(g), G.inverse(h), x));
        }
      }
    }
  }
  auto t = trivial_action(z(3), share(pair_groupoid(2)));
  auto p = to_lax_presheaf(t);
  for (const auto& f : p.functors) CHECK(f == identity_functor(t.space_ptr()));
  for (const auto& c : p.comparisons) CHECK(c == t.space().identities());
}

TEST_CASE("lax comparisons of a transported trivial action match direct expansion") {
  // For the trivial action transported along j^x : x -> r(x), the comparison
  // c_{g,h}^x is j^x . (j^{r(x)})^-1 ... expanded: alpha'_{g,h}^x =
  // j^x . alpha . mu_g(j^x^-1) . (j^{r x})^-1 with mu_g = Id, alpha = id.
  auto m = share(pair_groupoid(3));
  auto a = trivial_action(z(2), m);
  std::vector<ArrowId> j = {1, 5, 6};  // 0 -> 1, 1 -> 2, 2 -> 0
  auto t = transport_action(a, j);
  auto p = to_lax_presheaf(t);
  for (ObjectId x = 0; x < 3; ++x) {
    auto rx = m->target(j[x]);
    auto expected = m->compose(j[x], m->compose(m->inverse(j[x]), m->inverse(j[rx])));
    for (Element g = 0; g < 2; ++g)
      for (Element h = 0; h < 2; ++h) CHECK(p.comparison(g, h, x) == expected);
  }
}

TEST_CASE("validator agrees with the oracle on every single alpha and unit mutation") {
  std::size_t rejected = 0, accepted = 0;
  for (const auto& a : weak_actions(2)) {
    const auto& m = a->space();
    const auto n = a->group_order();
    for (std::size_t idx = 0; idx < n * n; ++idx) {
      for (ObjectId x = 0; x < a->num_objects(); ++x) {
        const auto cur = a->alpha_table()[idx][x];
        for (auto v : m.hom(m.source(cur), m.target(cur))) {
          if (v == cur) continue;
          auto alpha = a->alpha_table();
          alpha[idx][x] = v;
          std::vector<GroupoidFunctor> mu;
          for (Element g = 0; g < n; ++g) mu.push_back(a->mu(g));
          WeakAction b(a->group_ptr(), a->space_ptr(), mu, alpha, a->unit_table());
          bool valid = validate_action(b).ok();
          CHECK(valid == oracle::action_axioms(b));
          (valid ? accepted : rejected)++;
        }
      }
    }
    for (ObjectId x = 0; x < a->num_objects(); ++x) {
      const auto cur = a->unit(x);
      for (auto v : m.hom(m.source(cur), m.target(cur))) {
        if (v == cur) continue;
        auto unit = a->unit_table();
        unit[x] = v;
        std::vector<GroupoidFunctor> mu;
        for (Element g = 0; g < n; ++g) mu.push_back(a->mu(g));
        WeakAction b(a->group_ptr(), a->space_ptr(), mu, a->alpha_table(), unit);
        bool valid = validate_action(b).ok();
        CHECK(valid == oracle::action_axioms(b));
        (valid ? accepted : rejected)++;
      }
    }
  }
  CHECK(rejected >= 200);
  MESSAGE("alpha/unit mutations rejected: " << rejected << ", valid after mutation: " << accepted);
}

TEST_CASE("a corrupted alpha component is located") {
  auto b = trivial_action(z(2), share(b0_groupoid(cyclic(3))));
  auto alpha = b.alpha_table();
  alpha[1 * 2 + 0][0] = 1;
  WeakAction bad(b.group_ptr(), b.space_ptr(), {b.mu(0), b.mu(1)}, alpha, b.unit_table());
  auto r = validate_action(bad);
  CHECK_FALSE(r.ok());
  CHECK(r.has_kind("coherence"));
  bool located = false;
  for (const auto& v : r.violations()) {
    if (v.kind == "coherence") located |= v.coords.size() == 4;
  }
  CHECK(located);
}

TEST_CASE("a non-natural alpha is reported as such") {
  // On b0(S3) with the trivial action, a non-central alpha component breaks
  // naturality.
  auto s3 = symmetric_group(3);
  auto b = trivial_action(z(2), share(b0_groupoid(s3)));
  auto alpha = b.alpha_table();
  alpha[3][0] = 1;
  WeakAction bad(b.group_ptr(), b.space_ptr(), {b.mu(0), b.mu(1)}, alpha, b.unit_table());
  auto r = validate_action(bad);
  CHECK(r.has_kind("alpha.naturality"));
}

TEST_CASE("exploratory: unit identities for alpha with one argument the identity") {
  // Not asserted: recorded as data over the fixture corpus.
  std::size_t checked = 0, left_fail = 0, right_fail = 0;
  for (std::uint32_t seed = 1; seed <= 5; ++seed) {
    for (const auto& a : weak_actions(seed)) {
      for (Element g = 0; g < a->group_order(); ++g) {
        for (ObjectId x = 0; x < a->num_objects(); ++x) {
          ++checked;
          left_fail += a->alpha(0, g, x) != a->unit(a->act(g, x));
          right_fail += a->alpha(g, 0, x) != a->act_arrow(g, a->unit(x));
        }
      }
    }
  }
  MESSAGE("instances " << checked << ", alpha(1,g) != unit(g.x): " << left_fail
                       << ", alpha(g,1) != g.unit(x): " << right_fail);
}

TEST_CASE("G-morphisms: identity, corruption, composition") {
  for (const auto& a : weak_actions(6)) {
    auto id = identity_g_morphism(a);
    CHECK(validate_g_morphism(id).ok());
    CHECK(oracle::g_morphism_axioms(*a, *a, id.functor, id.sigma));

    auto c1 = compose_g_morphisms(id, id);
    CHECK(c1.sigma == id.sigma);
    CHECK(c1.functor == id.functor);
  }
  auto a = share(trivial_action(z(2), share(b0_groupoid(cyclic(3)))));
  auto bad = identity_g_morphism(a);
  bad.sigma[1] = 1;
  auto r = validate_g_morphism(bad);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(oracle::g_morphism_axioms(*a, *a, bad.functor, bad.sigma));
  bad.sigma.pop_back();
  CHECK_THROWS_AS(validate_g_morphism(bad), MalformedError);
}

TEST_CASE("composition of G-morphisms is unital and associative") {
  std::mt19937 rng(8);
  for (const auto& base : base_actions()) {
    // Three G-isomorphisms base -> t1 -> t2 -> t3 built from transports.
    std::vector<ActionPtr> chain = {base};
    std::vector<GMorphism> ms;
    for (int i = 0; i < 3; ++i) {
      const auto& from = chain.back();
      auto j = random_pointwise_transport(*from, rng);
      auto to = share(transport_action_pointwise(*from, j));
      GMorphism m{to, from, identity_functor(from->space_ptr()), j};
      REQUIRE(validate_g_morphism(m).ok());
      ms.push_back(m);
      chain.push_back(to);
    }
    // ms[i] : chain[i+1] -> chain[i]; compose t3 -> t2 -> t1 -> base.
    auto left = compose_g_morphisms(compose_g_morphisms(ms[2], ms[1]), ms[0]);
    auto right = compose_g_morphisms(ms[2], compose_g_morphisms(ms[1], ms[0]));
    CHECK(left.sigma == right.sigma);
    CHECK(left.functor == right.functor);
    CHECK(validate_g_morphism(left).ok());
    CHECK(oracle::g_morphism_axioms(*left.source, *left.target, left.functor, left.sigma));

    auto before = compose_g_morphisms(identity_g_morphism(ms[0].source), ms[0]);
    auto after = compose_g_morphisms(ms[0], identity_g_morphism(ms[0].target));
    CHECK(before.sigma == ms[0].sigma);
    CHECK(after.sigma == ms[0].sigma);
  }
  auto a = share(z4_negation());
  auto b = share(trivial_action(z(2), share(discrete_groupoid(1))));
  CHECK_THROWS_AS(compose_g_morphisms(identity_g_morphism(a), identity_g_morphism(b)),
                  MalformedError);
}

TEST_CASE("2-morphisms") {
  for (const auto& a : weak_actions(12)) {
    auto id = identity_g_morphism(a);
    CHECK(validate_2g_morphism(identity_2g_morphism(id)).ok());
  }
  // Conjugating a G-morphism by a natural isomorphism theta : f => f' gives
  // a G-morphism f' with sigma' = theta . sigma . g.theta^-1, and theta is a
  // 2-morphism between them.
  std::mt19937 rng(13);
  std::size_t rejected = 0, kept = 0;
  for (const auto& a : weak_actions(14)) {
    auto m = identity_g_morphism(a);
    const auto& sp = a->space();
    std::vector<ArrowId> theta;
    for (ObjectId x = 0; x < sp.num_objects(); ++x) theta.push_back(random_out_arrow(sp, x, rng));
    GMorphism m2{a, a, m.functor, {}};
    m2.functor.object_map.clear();
    for (ObjectId x = 0; x < sp.num_objects(); ++x) m2.functor.object_map.push_back(sp.target(theta[x]));
    for (ArrowId f = 0; f < sp.num_arrows(); ++f) {
      m2.functor.arrow_map[f] = sp.compose(theta[sp.target(f)], sp.compose(f, sp.inverse(theta[sp.source(f)])));
    }
    for (Element g = 0; g < a->group_order(); ++g) {
      for (ObjectId x = 0; x < sp.num_objects(); ++x) {
        auto gx = a->act(g, x);
        m2.sigma.push_back(sp.compose(theta[gx], sp.compose(m.sigma_at(g, x),
                                                            sp.inverse(a->act_arrow(g, theta[x])))));
      }
    }
    CHECK(validate_g_morphism(m2).ok());
    CHECK(oracle::g_morphism_axioms(*a, *a, m2.functor, m2.sigma));
    G2Morphism t{m, m2, theta};
    CHECK(validate_2g_morphism(t).ok());
    for (auto c : sp.hom(sp.source(theta[0]), sp.target(theta[0]))) {
      if (c == theta[0]) continue;
      auto bad = t;
      bad.tau[0] = c;
      bool valid = validate_2g_morphism(bad).ok();
      CHECK(valid == oracle::two_morphism_axioms(bad));
      (valid ? kept : rejected)++;
    }
  }
  CHECK(rejected > 0);
  MESSAGE("tau corruptions rejected: " << rejected << ", still valid: " << kept);
}

TEST_CASE("actions_equivalent decisions") {
  for (const auto& a : weak_actions(15)) {
    auto r = actions_equivalent(a, a);
    CHECK(r.verdict == Verdict::kTrue);
    REQUIRE(r.witness);
    CHECK(validate_g_morphism(*r.witness).ok());
  }
  // Trivial Z/2 action on b0(Z/4) against negation: brute force over all 16
  // sigma families finds none.
  auto triv = share(trivial_action(z(2), share(b0_groupoid(cyclic(4)))));
  auto neg = share(z4_negation());
  std::size_t valid = 0;
  oracle::for_each_map(2, 4, [&](const std::vector<std::uint32_t>& s) {
    valid += oracle::g_morphism_axioms(*triv, *neg, identity_functor(triv->space_ptr()),
                                       {s[0], s[1]});
  });
  CHECK(valid == 0);
  CHECK(actions_equivalent(triv, neg).verdict == Verdict::kFalse);
  CHECK(actions_equivalent(neg, triv).verdict == Verdict::kFalse);
}

TEST_CASE("sigma search agrees with brute force on small actions") {
  std::mt19937 rng(17);
  std::vector<ActionPtr> small = {
      share(trivial_action(z(2), share(b0_groupoid(cyclic(2))))),
      share(trivial_action(z(2), share(b0_groupoid(cyclic(3))))),
      share(z4_negation()),
      share(trivial_action(z(2), share(b0_groupoid(cyclic(4))))),
      share(action_from_gset(z(2), {{0, 1}, {1, 0}})),
      share(trivial_action(z(2), share(discrete_groupoid(2)))),
  };
  for (std::size_t i = 0, n = small.size(); i < n; ++i) {
    auto j = random_pointwise_transport(*small[i], rng);
    small.push_back(share(transport_action_pointwise(*small[i], j)));
  }
  for (const auto& a : small) {
    for (const auto& b : small) {
      if (!same_groupoid(a->space_ptr(), b->space_ptr()) || !(a->group() == b->group())) continue;
      const auto& m = a->space();
      const auto slots = a->group_order() * a->num_objects();
      std::size_t count = 0;
      oracle::for_each_map(slots, m.num_arrows(), [&](const std::vector<std::uint32_t>& s) {
        count += oracle::g_morphism_axioms(*a, *b, identity_functor(a->space_ptr()), s);
      });
      auto r = actions_equivalent(a, b);
      CHECK(r.verdict == (count ? Verdict::kTrue : Verdict::kFalse));
    }
  }
}

TEST_CASE("G-isomorphism search across different groupoids") {
  auto g = z(2);
  auto on_pair = share(trivial_action(g, share(pair_groupoid(2))));
  auto on_point = share(trivial_action(g, share(discrete_groupoid(1))));
  auto r = find_g_isomorphism(on_pair, on_point);
  CHECK(r.verdict == Verdict::kTrue);
  REQUIRE(r.witness);
  CHECK(is_g_isomorphism(*r.witness));

  // A free action cannot be equivalent to a trivial one: sigma_g^x would be
  // an arrow f(x) -> f(g.x) in a discrete groupoid, forcing f(x) = f(g.x).
  auto free = share(left_translation_action(g));
  auto fixed = share(trivial_action(g, share(discrete_groupoid(2))));
  CHECK(find_g_isomorphism(free, fixed).verdict == Verdict::kFalse);

  auto q = share(quaternion_twist());
  auto qt = share(trivial_action(q->group_ptr(), q->space_ptr()));
  // The conjugation twist has no G-morphism to the trivial action: its
  // sigma would be a lift of Q/Z -> Q.
  CHECK(find_g_isomorphism(q, qt).verdict == Verdict::kFalse);
}
