#include "stackt/strictify.hpp"

#include <algorithm>

#include "arrow_path.hpp"

namespace stackt {

using detail::follow;

ArrowId StrictificationResult::arrow_of(ObjectId source, ObjectId target, ArrowId underlying) const {
  const auto& a = *input;
  const auto& m = a.space();
  const auto [g, x] = pair_of(source);
  const auto [h, y] = pair_of(target);
  const auto& G = a.group();
  auto hom = m.hom(x, a.act(G.mul(G.inverse(g), h), y));
  auto it = std::lower_bound(hom.begin(), hom.end(), underlying);
  if (it == hom.end() || *it != underlying) return kNone;
  const auto n = a.group_order() * a.num_objects();
  return static_cast<ArrowId>(block_offset[source * n + target] + (it - hom.begin()));
}

StrictificationResult strictify(const ActionPtr& ap) {
  auto report = validate_action(*ap);
  if (!report.ok()) throw InvalidInput("cannot strictify an invalid action", report);
  const auto& a = *ap;
  const auto& G = a.group();
  const auto& m = a.space();
  const auto order = static_cast<Element>(a.group_order());
  const auto no = static_cast<ObjectId>(a.num_objects());
  const auto n = static_cast<std::size_t>(order) * no;

  StrictificationResult out;
  out.input = ap;
  out.block_offset.assign(n * n, 0);
  std::vector<ArrowEnds> ends;
  auto k_of = [&](Element g, Element h) { return G.mul(G.inverse(g), h); };
  for (ObjectId s = 0; s < n; ++s) {
    const auto g = static_cast<Element>(s / no);
    const auto x = static_cast<ObjectId>(s % no);
    for (ObjectId t = 0; t < n; ++t) {
      const auto h = static_cast<Element>(t / no);
      const auto y = static_cast<ObjectId>(t % no);
      out.block_offset[s * n + t] = out.arrows.size();
      for (auto phi : m.hom(x, a.act(k_of(g, h), y))) {
        out.arrows.push_back({s, t, phi});
        ends.push_back({s, t});
      }
    }
  }
  std::vector<ArrowId> ids(n);
  for (ObjectId s = 0; s < n; ++s) {
    const auto x = static_cast<ObjectId>(s % no);
    ids[s] = out.arrow_of(s, s, m.inverse(a.unit(x)));
  }
  auto compose = [&](ArrowId first, ArrowId second) -> ArrowId {
    const auto& p = out.arrows[first];
    const auto& q = out.arrows[second];
    const auto g = static_cast<Element>(p.source / no);
    const auto h = static_cast<Element>(p.target / no);
    const auto k = static_cast<Element>(q.target / no);
    const auto z = static_cast<ObjectId>(q.target % no);
    auto r = follow(m, {p.underlying, a.act_arrow(k_of(g, h), q.underlying),
                        a.alpha(k_of(g, h), k_of(h, k), z)});
    auto id = r == kNone ? kNone : out.arrow_of(p.source, q.target, r);
    if (id == kNone) throw InvalidInput("strictified composite is ill-typed", {});
    return id;
  };
  out.strict_space = share(FiniteGroupoid::build(n, std::move(ends), std::move(ids), compose));
  const auto& space = out.strict_space;

  std::vector<GroupoidFunctor> mu;
  for (Element c = 0; c < order; ++c) {
    GroupoidFunctor f{space, space, {}, {}};
    for (ObjectId s = 0; s < n; ++s) {
      f.object_map.push_back(out.object_of(G.mul(c, static_cast<Element>(s / no)), s % no));
    }
    for (const auto& arr : out.arrows) {
      f.arrow_map.push_back(
          out.arrow_of(f.object_map[arr.source], f.object_map[arr.target], arr.underlying));
    }
    mu.push_back(std::move(f));
  }
  out.strict_action = share(strict_action(a.group_ptr(), space, std::move(mu)));

  GroupoidFunctor u{space, a.space_ptr(), {}, {}};
  for (ObjectId s = 0; s < n; ++s) {
    u.object_map.push_back(a.act(static_cast<Element>(s / no), s % no));
  }
  for (const auto& arr : out.arrows) {
    const auto g = static_cast<Element>(arr.source / no);
    const auto h = static_cast<Element>(arr.target / no);
    const auto y = static_cast<ObjectId>(arr.target % no);
    u.arrow_map.push_back(
        follow(m, {a.act_arrow(g, arr.underlying), a.alpha(g, k_of(g, h), y)}));
  }
  std::vector<ArrowId> sigma;
  for (Element c = 0; c < order; ++c) {
    for (ObjectId s = 0; s < n; ++s) {
      sigma.push_back(a.alpha(c, static_cast<Element>(s / no), s % no));
    }
  }
  out.u = GMorphism{out.strict_action, ap, std::move(u), std::move(sigma)};
  return out;
}

GMorphism induced_strict_morphism(const StrictificationResult& sa, const StrictificationResult& sb,
                                  const GMorphism& m) {
  if (!same_action(m.source, sa.input) || !same_action(m.target, sb.input)) {
    throw MalformedError("G-morphism does not match the strictified actions");
  }
  const auto& a = *sa.input;
  const auto& b = *sb.input;
  const auto& G = a.group();
  const auto& mt = b.space();
  const auto no = a.num_objects();
  GroupoidFunctor f{sa.strict_space, sb.strict_space, {}, {}};
  for (ObjectId s = 0; s < sa.strict_space->num_objects(); ++s) {
    auto [g, x] = sa.pair_of(s);
    f.object_map.push_back(sb.object_of(g, m.functor.on_object(x)));
  }
  for (const auto& arr : sa.arrows) {
    auto [g, x] = sa.pair_of(arr.source);
    auto [h, y] = sa.pair_of(arr.target);
    const auto k = G.mul(G.inverse(g), h);
    // f(phi) : f(x) -> f(k.y), then back along sigma_k^y : k.f(y) -> f(k.y).
    auto r = follow(mt, {m.functor.on_arrow(arr.underlying),
                         detail::inverse_or_none(mt, m.sigma[k * no + y])});
    auto id = r == kNone ? kNone
                         : sb.arrow_of(f.object_map[arr.source], f.object_map[arr.target], r);
    if (id == kNone) throw MalformedError("induced strict arrow is ill-typed");
    f.arrow_map.push_back(id);
  }
  std::vector<ArrowId> sigma;
  for (Element c = 0; c < a.group_order(); ++c) {
    for (ObjectId s = 0; s < sa.strict_space->num_objects(); ++s) {
      auto [g, x] = sa.pair_of(s);
      sigma.push_back(sb.strict_space->identity(sb.object_of(G.mul(c, g), m.functor.on_object(x))));
    }
  }
  return GMorphism{sa.strict_action, sb.strict_action, std::move(f), std::move(sigma)};
}

G2Morphism strictification_square(const StrictificationResult& sa,
                                  const StrictificationResult& sb, const GMorphism& m,
                                  const GMorphism& f_str) {
  G2Morphism t{compose_g_morphisms(f_str, sb.u), compose_g_morphisms(sa.u, m), {}};
  const auto no = sa.input->num_objects();
  for (ObjectId s = 0; s < sa.strict_space->num_objects(); ++s) {
    auto [g, x] = sa.pair_of(s);
    t.tau.push_back(m.sigma[g * no + x]);
  }
  return t;
}

}  // namespace stackt
