#include "stackt/action.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "arrow_path.hpp"

namespace stackt {

using detail::follow;
using detail::has_ends;
using detail::inverse_or_none;

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

void merge_at(ValidationReport& r, const ValidationReport& sub, const std::string& prefix,
              std::initializer_list<std::int64_t> where) {
  for (const auto& v : sub.violations()) {
    Violation w{prefix + v.kind, where, v.detail};
    w.coords.insert(w.coords.end(), v.coords.begin(), v.coords.end());
    r.add(std::move(w));
  }
}

void check_endofunctor_shape(const GroupoidFunctor& f, const GroupoidPtr& space,
                             const std::string& what) {
  if (!same_groupoid(f.source, space) || !same_groupoid(f.target, space)) {
    throw MalformedError(what + " is not an endofunctor of the acted-on groupoid");
  }
  if (f.object_map.size() != space->num_objects() || f.arrow_map.size() != space->num_arrows()) {
    throw MalformedError(what + " has maps of the wrong size");
  }
  for (auto x : f.object_map) {
    if (x >= space->num_objects()) throw MalformedError(what + " sends an object out of range");
  }
  for (auto a : f.arrow_map) {
    if (a >= space->num_arrows()) throw MalformedError(what + " sends an arrow out of range");
  }
}

void check_components(const std::vector<ArrowId>& c, const FiniteGroupoid& m,
                      const std::string& what) {
  if (c.size() != m.num_objects()) {
    throw MalformedError(what + ": expected " + str(m.num_objects()) + " components, got " +
                         str(c.size()));
  }
  for (auto a : c) {
    if (a >= m.num_arrows()) throw MalformedError(what + ": component out of range");
  }
}

}  // namespace

WeakAction::WeakAction(GroupPtr group, GroupoidPtr space, std::vector<GroupoidFunctor> mu,
                       std::vector<std::vector<ArrowId>> alpha, std::vector<ArrowId> unit)
    : group_(std::move(group)),
      space_(std::move(space)),
      mu_(std::move(mu)),
      alpha_(std::move(alpha)),
      unit_(std::move(unit)) {
  if (!group_ || !space_) throw MalformedError("action needs a group and a groupoid");
  const auto n = group_->order();
  if (mu_.size() != n) {
    throw MalformedError("expected " + str(n) + " endofunctors, got " + str(mu_.size()));
  }
  for (std::size_t g = 0; g < n; ++g) check_endofunctor_shape(mu_[g], space_, "mu(" + str(g) + ")");
  if (alpha_.size() != n * n) {
    throw MalformedError("expected " + str(n * n) + " alpha families, got " + str(alpha_.size()));
  }
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    check_components(alpha_[i], *space_, "alpha(" + str(i / n) + "," + str(i % n) + ")");
  }
  check_components(unit_, *space_, "unit");
}

NaturalIso WeakAction::alpha_iso(Element g, Element h) const {
  return NaturalIso{compose_functors(mu_[g], mu_[h]), mu_[group_->mul(g, h)],
                    alpha_[g * group_order() + h]};
}

NaturalIso WeakAction::unit_iso() const {
  return NaturalIso{mu_[FiniteGroup::identity()], identity_functor(space_), unit_};
}

bool WeakAction::is_strict() const {
  for (const auto& fam : alpha_) {
    for (auto a : fam) {
      if (!space_->is_identity(a)) return false;
    }
  }
  for (auto a : unit_) {
    if (!space_->is_identity(a)) return false;
  }
  return true;
}

bool WeakAction::operator==(const WeakAction& other) const {
  if (!(*group_ == *other.group_) || !same_groupoid(space_, other.space_)) return false;
  for (std::size_t g = 0; g < mu_.size(); ++g) {
    if (mu_[g].object_map != other.mu_[g].object_map ||
        mu_[g].arrow_map != other.mu_[g].arrow_map) {
      return false;
    }
  }
  return alpha_ == other.alpha_ && unit_ == other.unit_;
}

bool same_action(const ActionPtr& a, const ActionPtr& b) { return a == b || (a && b && *a == *b); }

ValidationReport validate_action(const WeakAction& a) {
  ValidationReport r;
  r.merge(validate_group(a.group()), "group.");
  r.merge(validate_groupoid(a.space()), "space.");
  const auto n = static_cast<Element>(a.group_order());
  const auto& m = a.space();
  for (Element g = 0; g < n; ++g) merge_at(r, validate_functor(a.mu(g)), "mu.", {g});
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) merge_at(r, validate_nat_iso(a.alpha_iso(g, h)), "alpha.", {g, h});
  }
  merge_at(r, validate_nat_iso(a.unit_iso()), "unit.", {});

  const auto& G = a.group();
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      for (Element k = 0; k < n; ++k) {
        for (ObjectId x = 0; x < m.num_objects(); ++x) {
          auto lhs = follow(m, {a.act_arrow(g, a.alpha(h, k, x)), a.alpha(g, G.mul(h, k), x)});
          auto rhs = follow(m, {a.alpha(g, h, a.act(k, x)), a.alpha(G.mul(g, h), k, x)});
          if (lhs == kNone || rhs == kNone) {
            if (r.ok()) r.add("coherence", {g, h, k, x}, "sides do not compose");
            continue;
          }
          if (lhs != rhs) r.add("coherence", {g, h, k, x});
        }
      }
    }
  }
  constexpr Element e = FiniteGroup::identity();
  for (ObjectId x = 0; x < m.num_objects(); ++x) {
    if (a.act_arrow(e, a.unit(x)) != a.alpha(e, e, x)) r.add("unit_axiom", {x});
  }
  return r;
}

WeakAction strict_action(GroupPtr group, GroupoidPtr space, std::vector<GroupoidFunctor> mu) {
  const auto n = group->order();
  if (mu.size() != n) {
    throw MalformedError("expected " + str(n) + " endofunctors, got " + str(mu.size()));
  }
  std::vector<std::vector<ArrowId>> alpha(n * n);
  for (std::size_t g = 0; g < n; ++g) {
    check_endofunctor_shape(mu[g], space, "mu(" + str(g) + ")");
  }
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      auto& fam = alpha[g * n + h];
      for (ObjectId x = 0; x < space->num_objects(); ++x) {
        fam.push_back(space->identity(mu[group->mul(g, h)].on_object(x)));
      }
    }
  }
  return WeakAction(std::move(group), space, std::move(mu), std::move(alpha),
                    std::vector<ArrowId>(space->identities()));
}

WeakAction trivial_action(GroupPtr group, GroupoidPtr space) {
  std::vector<GroupoidFunctor> mu(group->order(), identity_functor(space));
  return strict_action(std::move(group), std::move(space), std::move(mu));
}

FiniteGroupoid b0_groupoid(const FiniteGroup& g) {
  std::vector<ArrowEnds> arrows(g.order(), ArrowEnds{0, 0});
  return FiniteGroupoid::build(1, std::move(arrows), {FiniteGroup::identity()},
                               [&](ArrowId first, ArrowId second) { return g.mul(second, first); });
}

WeakAction twist_action(const AutomorphismAction& twist) {
  auto report = validate_automorphism_action(twist);
  if (!report.ok()) throw std::invalid_argument("twist is not an action by automorphisms");
  auto space = share(b0_groupoid(*twist.on));
  std::vector<GroupoidFunctor> mu;
  for (const auto& theta : twist.automorphisms) mu.push_back({space, space, {0}, theta});
  return strict_action(twist.acting, space, std::move(mu));
}

WeakAction lifted_conjugation_action(const GroupPtr& q, std::vector<Element> central_subgroup) {
  auto twist = conjugation_action(q, central_subgroup);
  auto quot = quotient_group(q, std::move(central_subgroup));
  const auto& G = *quot.group;
  auto space = share(b0_groupoid(*q));
  std::vector<GroupoidFunctor> mu;
  for (const auto& theta : twist.automorphisms) mu.push_back({space, space, {0}, theta});
  std::vector<std::vector<ArrowId>> alpha;
  for (Element g = 0; g < G.order(); ++g) {
    for (Element h = 0; h < G.order(); ++h) {
      const auto rg = quot.cosets[g].front();
      const auto rh = quot.cosets[h].front();
      const auto rgh = quot.cosets[G.mul(g, h)].front();
      alpha.push_back({q->mul(q->mul(rg, rh), q->inverse(rgh))});
    }
  }
  return WeakAction(quot.group, space, std::move(mu), std::move(alpha), {FiniteGroup::identity()});
}

WeakAction action_from_gset(GroupPtr group, const std::vector<std::vector<ObjectId>>& permutations) {
  const auto n = group->order();
  if (permutations.size() != n) throw MalformedError("one permutation per group element expected");
  const auto size = permutations.front().size();
  for (const auto& p : permutations) {
    if (p.size() != size) throw MalformedError("permutations of different sizes");
    for (auto x : p) {
      if (x >= size) throw MalformedError("permutation entry out of range");
    }
  }
  for (ObjectId x = 0; x < size; ++x) {
    if (permutations[FiniteGroup::identity()][x] != x) {
      throw std::invalid_argument("the identity does not act trivially");
    }
  }
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      for (ObjectId x = 0; x < size; ++x) {
        if (permutations[g][permutations[h][x]] != permutations[group->mul(g, h)][x]) {
          throw std::invalid_argument("permutations do not form an action at (" + str(g) + "," +
                                      str(h) + ")");
        }
      }
    }
  }
  auto space = share(discrete_groupoid(size));
  std::vector<GroupoidFunctor> mu;
  for (const auto& p : permutations) mu.push_back({space, space, p, p});
  return strict_action(std::move(group), space, std::move(mu));
}

WeakAction left_translation_action(GroupPtr group) {
  const auto n = group->order();
  std::vector<std::vector<ObjectId>> perms(n, std::vector<ObjectId>(n));
  for (Element g = 0; g < n; ++g) {
    for (Element x = 0; x < n; ++x) perms[g][x] = group->mul(g, x);
  }
  return action_from_gset(std::move(group), perms);
}

WeakAction product_action(const WeakAction& a, const WeakAction& b) {
  if (!(a.group() == b.group())) throw std::invalid_argument("actions of different groups");
  auto space = share(product_groupoid(a.space(), b.space()));
  const auto n = a.group_order();
  const auto nb = static_cast<ObjectId>(b.num_objects());
  const auto mb = static_cast<ArrowId>(b.space().num_arrows());
  std::vector<GroupoidFunctor> mu;
  for (Element g = 0; g < n; ++g) {
    GroupoidFunctor f{space, space, {}, {}};
    for (ObjectId i = 0; i < a.num_objects(); ++i) {
      for (ObjectId j = 0; j < nb; ++j) f.object_map.push_back(a.act(g, i) * nb + b.act(g, j));
    }
    for (ArrowId p = 0; p < a.space().num_arrows(); ++p) {
      for (ArrowId q = 0; q < mb; ++q) f.arrow_map.push_back(a.act_arrow(g, p) * mb + b.act_arrow(g, q));
    }
    mu.push_back(std::move(f));
  }
  std::vector<std::vector<ArrowId>> alpha(n * n);
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      for (ObjectId i = 0; i < a.num_objects(); ++i) {
        for (ObjectId j = 0; j < nb; ++j) {
          alpha[g * n + h].push_back(a.alpha(g, h, i) * mb + b.alpha(g, h, j));
        }
      }
    }
  }
  std::vector<ArrowId> unit;
  for (ObjectId i = 0; i < a.num_objects(); ++i) {
    for (ObjectId j = 0; j < nb; ++j) unit.push_back(a.unit(i) * mb + b.unit(j));
  }
  return WeakAction(a.group_ptr(), space, std::move(mu), std::move(alpha), std::move(unit));
}

WeakAction transport_action_pointwise(const WeakAction& a, const std::vector<ArrowId>& j) {
  const auto n = a.group_order();
  const auto no = a.num_objects();
  const auto& m = a.space();
  if (j.size() != n * no) {
    throw MalformedError("expected " + str(n * no) + " transport components, got " + str(j.size()));
  }
  auto jj = [&](Element g, ObjectId x) { return j[g * no + x]; };
  for (Element g = 0; g < n; ++g) {
    for (ObjectId x = 0; x < no; ++x) {
      auto c = jj(g, x);
      if (c >= m.num_arrows() || m.source(c) != a.act(g, x)) {
        throw MalformedError("transport component (" + str(g) + "," + str(x) +
                             ") does not start at g.x");
      }
      if (!m.has_inverse(c)) {
        throw MalformedError("transport component (" + str(g) + "," + str(x) +
                             ") is not invertible");
      }
    }
  }
  auto need = [](ArrowId f) {
    if (f == kNone) throw MalformedError("cannot transport an action whose data does not compose");
    return f;
  };
  const auto& space = a.space_ptr();
  std::vector<GroupoidFunctor> mu;
  for (Element g = 0; g < n; ++g) {
    GroupoidFunctor f{space, space, {}, {}};
    for (ObjectId x = 0; x < no; ++x) f.object_map.push_back(m.target(jj(g, x)));
    for (ArrowId p = 0; p < m.num_arrows(); ++p) {
      f.arrow_map.push_back(need(follow(
          m, {m.inverse(jj(g, m.source(p))), a.act_arrow(g, p), jj(g, m.target(p))})));
    }
    mu.push_back(std::move(f));
  }
  std::vector<std::vector<ArrowId>> alpha(n * n);
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      for (ObjectId x = 0; x < no; ++x) {
        auto y = mu[h].on_object(x);
        alpha[g * n + h].push_back(need(follow(
            m, {m.inverse(jj(g, y)), a.act_arrow(g, m.inverse(jj(h, x))), a.alpha(g, h, x),
                jj(a.group().mul(g, h), x)})));
      }
    }
  }
  std::vector<ArrowId> unit;
  for (ObjectId x = 0; x < no; ++x) {
    unit.push_back(need(follow(m, {m.inverse(jj(FiniteGroup::identity(), x)), a.unit(x)})));
  }
  return WeakAction(a.group_ptr(), space, std::move(mu), std::move(alpha), std::move(unit));
}

WeakAction transport_action(const WeakAction& a, const std::vector<ArrowId>& j) {
  const auto& m = a.space();
  if (j.size() != a.num_objects()) {
    throw MalformedError("expected one transport component per object");
  }
  for (ObjectId x = 0; x < j.size(); ++x) {
    if (j[x] >= m.num_arrows() || m.source(j[x]) != x) {
      throw MalformedError("transport component " + str(x) + " does not start at its object");
    }
  }
  std::vector<ArrowId> pointwise;
  for (Element g = 0; g < a.group_order(); ++g) {
    for (ObjectId x = 0; x < a.num_objects(); ++x) pointwise.push_back(j[a.act(g, x)]);
  }
  return transport_action_pointwise(a, pointwise);
}

LaxPresheaf to_lax_presheaf(const WeakAction& a) {
  const auto& G = a.group();
  const auto n = a.group_order();
  LaxPresheaf p{a.group_ptr(), a.space_ptr(), {}, std::vector<std::vector<ArrowId>>(n * n),
                a.unit_table()};
  for (Element g = 0; g < n; ++g) p.functors.push_back(a.mu(G.inverse(g)));
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      p.comparisons[g * n + h] = a.alpha_table()[G.inverse(g) * n + G.inverse(h)];
    }
  }
  return p;
}

WeakAction from_lax_presheaf(const LaxPresheaf& p) {
  if (!p.group || !p.space) throw MalformedError("lax presheaf needs a group and a groupoid");
  const auto& G = *p.group;
  const auto n = G.order();
  if (p.functors.size() != n || p.comparisons.size() != n * n) {
    throw MalformedError("lax presheaf families have the wrong size");
  }
  std::vector<GroupoidFunctor> mu;
  std::vector<std::vector<ArrowId>> alpha(n * n);
  for (Element g = 0; g < n; ++g) {
    if (G.inverse(g) == kNone) throw MalformedError("group element without inverse");
    mu.push_back(p.functors[G.inverse(g)]);
  }
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) alpha[g * n + h] = p.comparisons[G.inverse(g) * n + G.inverse(h)];
  }
  return WeakAction(p.group, p.space, std::move(mu), std::move(alpha), p.unit);
}

ValidationReport validate_lax_presheaf(const LaxPresheaf& p) {
  if (!p.group || !p.space) throw MalformedError("lax presheaf needs a group and a groupoid");
  const auto& G = *p.group;
  const auto& m = *p.space;
  const auto n = static_cast<Element>(G.order());
  if (p.functors.size() != n || p.comparisons.size() != std::size_t{n} * n) {
    throw MalformedError("lax presheaf families have the wrong size");
  }
  for (Element g = 0; g < n; ++g) check_endofunctor_shape(p.functors[g], p.space, "F(" + str(g) + ")");
  for (const auto& c : p.comparisons) check_components(c, m, "comparison");
  check_components(p.unit, m, "unit");

  ValidationReport r;
  for (Element g = 0; g < n; ++g) merge_at(r, validate_functor(p.functors[g]), "functor.", {g});
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      NaturalIso c{compose_functors(p.functors[g], p.functors[h]), p.functors[G.mul(h, g)],
                   p.comparisons[g * n + h]};
      merge_at(r, validate_nat_iso(c), "comparison.", {g, h});
    }
  }
  constexpr Element e = FiniteGroup::identity();
  merge_at(r, validate_nat_iso({p.functors[e], identity_functor(p.space), p.unit}), "unit.", {});
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      for (Element k = 0; k < n; ++k) {
        for (ObjectId x = 0; x < m.num_objects(); ++x) {
          auto lhs = follow(m, {p.functors[g].on_arrow(p.comparison(h, k, x)),
                                p.comparison(g, G.mul(k, h), x)});
          auto rhs = follow(m, {p.comparison(g, h, p.functors[k].on_object(x)),
                                p.comparison(G.mul(h, g), k, x)});
          if (lhs == kNone || rhs == kNone) {
            if (r.ok()) r.add("associativity", {g, h, k, x}, "sides do not compose");
            continue;
          }
          if (lhs != rhs) r.add("associativity", {g, h, k, x});
        }
      }
    }
  }
  for (ObjectId x = 0; x < m.num_objects(); ++x) {
    if (p.functors[e].on_arrow(p.unit[x]) != p.comparison(e, e, x)) r.add("unit_axiom", {x});
  }
  return r;
}

namespace {

void check_g_morphism_shape(const GMorphism& f) {
  if (!f.source || !f.target) throw MalformedError("G-morphism needs both endpoints");
  if (!(f.source->group() == f.target->group())) {
    throw MalformedError("G-morphism endpoints act by different groups");
  }
  if (!same_groupoid(f.functor.source, f.source->space_ptr()) ||
      !same_groupoid(f.functor.target, f.target->space_ptr())) {
    throw MalformedError("G-morphism functor does not match its endpoints");
  }
  const auto& t = f.target->space();
  if (f.functor.object_map.size() != f.source->num_objects() ||
      f.functor.arrow_map.size() != f.source->space().num_arrows()) {
    throw MalformedError("G-morphism functor maps have the wrong size");
  }
  for (auto x : f.functor.object_map) {
    if (x >= t.num_objects()) throw MalformedError("functor object image out of range");
  }
  for (auto a : f.functor.arrow_map) {
    if (a >= t.num_arrows()) throw MalformedError("functor arrow image out of range");
  }
  const auto want = f.source->group_order() * f.source->num_objects();
  if (f.sigma.size() != want) {
    throw MalformedError("expected " + str(want) + " sigma components, got " + str(f.sigma.size()));
  }
  for (auto a : f.sigma) {
    if (a >= t.num_arrows()) throw MalformedError("sigma component out of range");
  }
}

// Checks every identity on a sigma family that may contain kNone entries
// (unknown); identities touching an unknown are skipped. Returns false at the
// first violation unless `report` is given.
bool check_sigma(const WeakAction& a, const WeakAction& b, const GroupoidFunctor& f,
                 const std::vector<ArrowId>& sigma, ValidationReport* report) {
  const auto& ms = a.space();
  const auto& mt = b.space();
  const auto& G = a.group();
  const auto n = static_cast<Element>(a.group_order());
  const auto no = a.num_objects();
  auto s = [&](Element g, ObjectId x) { return sigma[g * no + x]; };
  bool ok = true;
  auto fail = [&](const char* kind, std::initializer_list<std::int64_t> at) {
    ok = false;
    if (report) report->add(kind, at);
    return report != nullptr;
  };
  std::vector<char> typed(sigma.size(), 1);
  for (Element g = 0; g < n; ++g) {
    for (ObjectId x = 0; x < no; ++x) {
      auto c = s(g, x);
      if (c == kNone) continue;
      if (!has_ends(mt, c, b.act(g, f.on_object(x)), f.on_object(a.act(g, x)))) {
        typed[g * no + x] = 0;
        if (!fail("sigma_type", {g, x})) return false;
      }
    }
  }
  auto usable = [&](Element g, ObjectId x) {
    return s(g, x) != kNone && typed[g * no + x];
  };
  for (Element g = 0; g < n; ++g) {
    for (ArrowId p = 0; p < ms.num_arrows(); ++p) {
      auto x = ms.source(p), y = ms.target(p);
      if (!usable(g, x) || !usable(g, y)) continue;
      auto lhs = follow(mt, {b.act_arrow(g, f.on_arrow(p)), s(g, y)});
      auto rhs = follow(mt, {s(g, x), f.on_arrow(a.act_arrow(g, p))});
      if (lhs == kNone || rhs == kNone || lhs != rhs) {
        if (!fail("sigma_naturality", {g, p})) return false;
      }
    }
  }
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      for (ObjectId x = 0; x < no; ++x) {
        auto gh = G.mul(g, h);
        if (!usable(h, x) || !usable(g, a.act(h, x)) || !usable(gh, x)) continue;
        auto lhs = follow(mt, {b.act_arrow(g, s(h, x)), s(g, a.act(h, x)),
                               f.on_arrow(a.alpha(g, h, x))});
        auto rhs = follow(mt, {b.alpha(g, h, f.on_object(x)), s(gh, x)});
        if (lhs == kNone || rhs == kNone || lhs != rhs) {
          if (!fail("compatibility", {g, h, x})) return false;
        }
      }
    }
  }
  constexpr Element e = FiniteGroup::identity();
  for (ObjectId x = 0; x < no; ++x) {
    if (!usable(e, x)) continue;
    auto lhs = follow(mt, {s(e, x), f.on_arrow(a.unit(x))});
    if (lhs == kNone || lhs != b.unit(f.on_object(x))) {
      if (!fail("unit", {x})) return false;
    }
  }
  return ok;
}

}  // namespace

ValidationReport validate_g_morphism(const GMorphism& m) {
  check_g_morphism_shape(m);
  ValidationReport r;
  merge_at(r, validate_functor(m.functor), "functor.", {});
  if (!r.ok()) return r;
  check_sigma(*m.source, *m.target, m.functor, m.sigma, &r);
  return r;
}

GMorphism identity_g_morphism(const ActionPtr& a) {
  GMorphism m{a, a, identity_functor(a->space_ptr()), {}};
  for (Element g = 0; g < a->group_order(); ++g) {
    for (ObjectId x = 0; x < a->num_objects(); ++x) {
      m.sigma.push_back(a->space().identity(a->act(g, x)));
    }
  }
  return m;
}

GMorphism compose_g_morphisms(const GMorphism& first, const GMorphism& second) {
  check_g_morphism_shape(first);
  check_g_morphism_shape(second);
  if (!same_action(first.target, second.source)) {
    throw MalformedError("G-morphisms are not composable");
  }
  GMorphism out{first.source, second.target, compose_functors(second.functor, first.functor), {}};
  const auto& mt = second.target->space();
  for (Element g = 0; g < first.source->group_order(); ++g) {
    for (ObjectId x = 0; x < first.source->num_objects(); ++x) {
      auto c = follow(mt, {second.sigma_at(g, first.functor.on_object(x)),
                           second.functor.on_arrow(first.sigma_at(g, x))});
      if (c == kNone) throw MalformedError("sigma components do not compose");
      out.sigma.push_back(c);
    }
  }
  return out;
}

bool is_g_isomorphism(const GMorphism& m) {
  return validate_g_morphism(m).ok() && is_equivalence(m.functor);
}

ValidationReport validate_2g_morphism(const G2Morphism& t) {
  check_g_morphism_shape(t.source);
  check_g_morphism_shape(t.target);
  if (!same_action(t.source.source, t.target.source) ||
      !same_action(t.source.target, t.target.target)) {
    throw MalformedError("2-morphism between G-morphisms with different endpoints");
  }
  const auto& a = *t.source.source;
  const auto& b = *t.source.target;
  const auto& mt = b.space();
  check_components(t.tau, a.space(), "tau");
  for (auto c : t.tau) {
    if (c >= mt.num_arrows()) throw MalformedError("tau component out of range");
  }
  ValidationReport r;
  merge_at(r, validate_nat_iso({t.source.functor, t.target.functor, t.tau}), "tau.", {});
  for (Element g = 0; g < a.group_order(); ++g) {
    for (ObjectId x = 0; x < a.num_objects(); ++x) {
      auto lhs = follow(mt, {b.act_arrow(g, t.tau[x]), t.target.sigma_at(g, x)});
      auto rhs = follow(mt, {t.source.sigma_at(g, x), t.tau[a.act(g, x)]});
      if (lhs == kNone || rhs == kNone || lhs != rhs) r.add("compatibility", {g, x});
    }
  }
  return r;
}

G2Morphism identity_2g_morphism(const GMorphism& m) {
  G2Morphism t{m, m, {}};
  for (ObjectId x = 0; x < m.source->num_objects(); ++x) {
    t.tau.push_back(m.target->space().identity(m.functor.on_object(x)));
  }
  return t;
}

namespace {

class SigmaSearch {
 public:
  SigmaSearch(const WeakAction& a, const WeakAction& b, const GroupoidFunctor& f,
              std::size_t budget)
      : a_(a), b_(b), f_(f), mt_(b.space()), budget_(budget), no_(a.num_objects()) {}

  // Fills unknowns forced by naturality and compatibility. False on conflict.
  bool propagate(std::vector<ArrowId>& s) const {
    const auto& ms = a_.space();
    const auto& G = a_.group();
    const auto n = static_cast<Element>(a_.group_order());
    auto at = [&](Element g, ObjectId x) -> ArrowId& { return s[g * no_ + x]; };
    auto assign = [&](Element g, ObjectId x, ArrowId v, bool& changed) {
      if (v == kNone) return false;
      auto& slot = at(g, x);
      if (slot == kNone) {
        if (!has_ends(mt_, v, b_.act(g, f_.on_object(x)), f_.on_object(a_.act(g, x)))) return false;
        slot = v;
        changed = true;
        return true;
      }
      return slot == v;
    };
    bool changed = true;
    while (changed) {
      changed = false;
      for (Element g = 0; g < n; ++g) {
        for (ArrowId p = 0; p < ms.num_arrows(); ++p) {
          auto x = ms.source(p), y = ms.target(p);
          if (at(g, x) == kNone) continue;
          // sigma_g^y = f(g.p) . sigma_g^x . g.f(p)^-1
          auto v = follow(mt_, {inverse_or_none(mt_, b_.act_arrow(g, f_.on_arrow(p))), at(g, x),
                                f_.on_arrow(a_.act_arrow(g, p))});
          if (!assign(g, y, v, changed)) return false;
        }
      }
      for (Element g = 0; g < n; ++g) {
        for (Element h = 0; h < n; ++h) {
          for (ObjectId x = 0; x < no_; ++x) {
            auto hx = a_.act(h, x);
            if (at(h, x) == kNone || at(g, hx) == kNone) continue;
            auto v = follow(mt_, {inverse_or_none(mt_, b_.alpha(g, h, f_.on_object(x))),
                                  b_.act_arrow(g, at(h, x)), at(g, hx),
                                  f_.on_arrow(a_.alpha(g, h, x))});
            if (!assign(G.mul(g, h), x, v, changed)) return false;
          }
        }
      }
    }
    return true;
  }

  std::optional<std::vector<ArrowId>> run(bool& exhausted) {
    std::vector<ArrowId> s(a_.group_order() * no_, kNone);
    constexpr Element e = FiniteGroup::identity();
    for (ObjectId x = 0; x < no_; ++x) {
      // f(a^x) . sigma_1^x = b^{f x}
      auto v = follow(mt_, {b_.unit(f_.on_object(x)),
                            inverse_or_none(mt_, f_.on_arrow(a_.unit(x)))});
      if (v == kNone) return std::nullopt;
      s[e * no_ + x] = v;
    }
    auto found = dfs(s);
    exhausted = nodes_ > budget_;
    return found;
  }

 private:
  std::optional<std::vector<ArrowId>> dfs(std::vector<ArrowId> s) {
    if (++nodes_ > budget_) return std::nullopt;
    if (!propagate(s)) return std::nullopt;
    auto hole = std::find(s.begin(), s.end(), kNone);
    if (hole == s.end()) {
      if (check_sigma(a_, b_, f_, s, nullptr)) return s;
      return std::nullopt;
    }
    const auto idx = static_cast<std::size_t>(hole - s.begin());
    const auto g = static_cast<Element>(idx / no_);
    const auto x = static_cast<ObjectId>(idx % no_);
    for (auto c : mt_.hom(b_.act(g, f_.on_object(x)), f_.on_object(a_.act(g, x)))) {
      auto next = s;
      next[idx] = c;
      if (auto r = dfs(std::move(next))) return r;
      if (nodes_ > budget_) return std::nullopt;
    }
    return std::nullopt;
  }

  const WeakAction& a_;
  const WeakAction& b_;
  const GroupoidFunctor& f_;
  const FiniteGroupoid& mt_;
  std::size_t budget_;
  std::size_t no_;
  std::size_t nodes_ = 0;
};

}  // namespace

EquivarianceSearch find_equivariance(const ActionPtr& source, const ActionPtr& target,
                                     const GroupoidFunctor& f, std::size_t budget) {
  GMorphism shape{source, target, f,
                  std::vector<ArrowId>(source->group_order() * source->num_objects(), 0)};
  check_g_morphism_shape(shape);
  if (!validate_functor(f).ok()) return {Verdict::kFalse, std::nullopt};
  SigmaSearch search(*source, *target, f, budget);
  bool exhausted = false;
  auto sigma = search.run(exhausted);
  if (sigma) return {Verdict::kTrue, GMorphism{source, target, f, std::move(*sigma)}};
  return {exhausted ? Verdict::kIndeterminate : Verdict::kFalse, std::nullopt};
}

EquivarianceSearch actions_equivalent(const ActionPtr& a, const ActionPtr& b, std::size_t budget) {
  if (!(a->group() == b->group())) throw MalformedError("actions of different groups");
  if (!same_groupoid(a->space_ptr(), b->space_ptr())) {
    throw MalformedError("actions on different groupoids");
  }
  return find_equivariance(a, b, identity_functor(a->space_ptr()), budget);
}

EquivarianceSearch find_g_isomorphism(const ActionPtr& a, const ActionPtr& b, std::size_t budget) {
  if (!(a->group() == b->group())) throw MalformedError("actions of different groups");
  EquivarianceSearch out{Verdict::kFalse, std::nullopt};
  bool undecided = false;
  auto verdict = for_each_equivalence(a->space_ptr(), b->space_ptr(), budget,
                                      [&](const GroupoidFunctor& f) {
                                        auto r = find_equivariance(a, b, f, budget);
                                        if (r.verdict == Verdict::kTrue) {
                                          out = std::move(r);
                                          return false;
                                        }
                                        if (r.verdict == Verdict::kIndeterminate) undecided = true;
                                        return true;
                                      });
  if (out.verdict == Verdict::kTrue) return out;
  if (verdict == Verdict::kIndeterminate || undecided) out.verdict = Verdict::kIndeterminate;
  return out;
}

}  // namespace stackt
