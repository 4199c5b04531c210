#include "stackt/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stackt {

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

}  // namespace

FiniteGroupoid::FiniteGroupoid(std::size_t num_objects, std::vector<ArrowEnds> arrows,
                               std::vector<ArrowId> identities,
                               const std::vector<CompositionEntry>& composition)
    : num_objects_(num_objects), arrows_(std::move(arrows)), identities_(std::move(identities)) {
  index_arrows();
  comp_.assign(comp_.size(), kNone);
  const auto n = arrows_.size();
  for (const auto& e : composition) {
    if (e.first >= n || e.second >= n || e.result >= n) {
      throw MalformedError("composition entry (" + str(e.first) + "," + str(e.second) + "," +
                           str(e.result) + ") has an arrow index out of range");
    }
    if (target(e.first) != source(e.second)) {
      throw MalformedError("composition entry for non-composable pair (" + str(e.first) +
                           "," + str(e.second) + ")");
    }
    auto& slot = comp_[comp_offset_[e.first] + out_pos_[e.second]];
    if (slot != kNone) {
      throw MalformedError("duplicate composition entry for pair (" + str(e.first) + "," +
                           str(e.second) + ")");
    }
    slot = e.result;
  }
  for (ArrowId f = 0; f < n; ++f) {
    for (auto g : out_arrows(target(f))) {
      if (compose(g, f) == kNone) {
        throw MalformedError("missing composition entry for pair (" + str(f) + "," + str(g) +
                             ")");
      }
    }
  }
  compute_inverses();
}

FiniteGroupoid FiniteGroupoid::build(
    std::size_t num_objects, std::vector<ArrowEnds> arrows, std::vector<ArrowId> identities,
    const std::function<ArrowId(ArrowId, ArrowId)>& compose_fn) {
  FiniteGroupoid g;
  g.num_objects_ = num_objects;
  g.arrows_ = std::move(arrows);
  g.identities_ = std::move(identities);
  g.index_arrows();
  for (ArrowId f = 0; f < g.arrows_.size(); ++f) {
    for (auto second : g.out_arrows(g.target(f))) {
      auto h = compose_fn(f, second);
      if (h >= g.arrows_.size()) {
        throw MalformedError("composite of (" + str(f) + "," + str(second) +
                             ") is out of range");
      }
      g.comp_[g.comp_offset_[f] + g.out_pos_[second]] = h;
    }
  }
  g.compute_inverses();
  return g;
}

void FiniteGroupoid::index_arrows() {
  const auto n = arrows_.size();
  if (identities_.size() != num_objects_) {
    throw MalformedError("expected " + str(num_objects_) + " identities, got " +
                         str(identities_.size()));
  }
  for (ArrowId f = 0; f < n; ++f) {
    if (arrows_[f].source >= num_objects_ || arrows_[f].target >= num_objects_) {
      throw MalformedError("arrow " + str(f) + " has an endpoint out of range");
    }
  }
  for (ObjectId x = 0; x < num_objects_; ++x) {
    if (identities_[x] >= n) throw MalformedError("identity of object " + str(x) + " out of range");
  }
  out_arrows_.resize(n);
  std::iota(out_arrows_.begin(), out_arrows_.end(), 0);
  std::sort(out_arrows_.begin(), out_arrows_.end(), [&](ArrowId a, ArrowId b) {
    const auto& ea = arrows_[a];
    const auto& eb = arrows_[b];
    if (ea.source != eb.source) return ea.source < eb.source;
    if (ea.target != eb.target) return ea.target < eb.target;
    return a < b;
  });
  out_begin_.assign(num_objects_ + 1, 0);
  for (const auto& e : arrows_) ++out_begin_[e.source + 1];
  for (std::size_t x = 0; x < num_objects_; ++x) out_begin_[x + 1] += out_begin_[x];
  out_pos_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto f = out_arrows_[i];
    out_pos_[f] = static_cast<std::uint32_t>(i - out_begin_[arrows_[f].source]);
  }
  comp_offset_.assign(n, 0);
  std::size_t total = 0;
  for (ArrowId f = 0; f < n; ++f) {
    comp_offset_[f] = total;
    auto y = arrows_[f].target;
    total += out_begin_[y + 1] - out_begin_[y];
  }
  comp_.assign(total, kNone);
}

void FiniteGroupoid::compute_inverses() {
  inverse_.assign(arrows_.size(), kNone);
  for (ArrowId f = 0; f < arrows_.size(); ++f) {
    const auto x = source(f), y = target(f);
    for (auto g : hom(y, x)) {
      if (compose(g, f) == identity(x) && compose(f, g) == identity(y)) {
        inverse_[f] = g;
        break;
      }
    }
  }
}

ArrowId FiniteGroupoid::inverse(ArrowId f) const {
  if (inverse_[f] == kNone) throw std::domain_error("arrow " + str(f) + " has no inverse");
  return inverse_[f];
}

std::span<const ArrowId> FiniteGroupoid::hom(ObjectId x, ObjectId y) const {
  auto all = out_arrows(x);
  auto lo = std::partition_point(all.begin(), all.end(),
                                 [&](ArrowId f) { return arrows_[f].target < y; });
  auto hi = std::partition_point(lo, all.end(),
                                 [&](ArrowId f) { return arrows_[f].target <= y; });
  return {lo, hi};
}

std::vector<ArrowId> isom_set(const FiniteGroupoid& g, ObjectId x, ObjectId y) {
  if (x >= g.num_objects() || y >= g.num_objects())
    throw std::out_of_range("isom_set: unknown object");
  auto h = g.hom(x, y);
  return {h.begin(), h.end()};
}

std::vector<CompositionEntry> FiniteGroupoid::composition_entries() const {
  std::vector<CompositionEntry> out;
  out.reserve(comp_.size());
  for (ArrowId f = 0; f < arrows_.size(); ++f) {
    std::vector<ArrowId> seconds(out_arrows(target(f)).begin(), out_arrows(target(f)).end());
    std::sort(seconds.begin(), seconds.end());
    for (auto g : seconds) out.push_back({f, g, compose(g, f)});
  }
  return out;
}

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
  return a == b || (a && b && *a == *b);
}

ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  ValidationReport r;
  const auto n = static_cast<ArrowId>(g.num_arrows());
  std::vector<bool> identity_ok(g.num_objects(), true);
  for (ObjectId x = 0; x < g.num_objects(); ++x) {
    auto e = g.identity(x);
    if (g.source(e) != x || g.target(e) != x) {
      r.add("identity_type", {x}, "identity arrow is not an endomorphism of its object");
      identity_ok[x] = false;
    }
  }
  auto typed = [&](ArrowId f, ArrowId second) {
    auto h = g.compose(second, f);
    return g.source(h) == g.source(f) && g.target(h) == g.target(second);
  };
  for (ArrowId f = 0; f < n; ++f) {
    for (auto second : g.out_arrows(g.target(f))) {
      if (!typed(f, second)) r.add("composite_type", {f, second});
    }
  }
  for (ArrowId f = 0; f < n; ++f) {
    const auto x = g.source(f), y = g.target(f);
    if (identity_ok[x] && g.compose(f, g.identity(x)) != f) r.add("right_unit", {f});
    if (identity_ok[y] && g.compose(g.identity(y), f) != f) r.add("left_unit", {f});
  }
  for (ArrowId f = 0; f < n; ++f) {
    for (auto second : g.out_arrows(g.target(f))) {
      if (!typed(f, second)) continue;
      auto gf = g.compose(second, f);
      for (auto third : g.out_arrows(g.target(second))) {
        if (!typed(second, third)) continue;
        auto hg = g.compose(third, second);
        if (g.compose(third, gf) != g.compose(hg, f)) r.add("associativity", {f, second, third});
      }
    }
  }
  for (ArrowId f = 0; f < n; ++f) {
    if (!g.has_inverse(f)) r.add("inverse", {f}, "arrow has no two-sided inverse");
  }
  return r;
}

GroupoidFunctor identity_functor(const GroupoidPtr& g) {
  GroupoidFunctor f{g, g, {}, {}};
  f.object_map.resize(g->num_objects());
  std::iota(f.object_map.begin(), f.object_map.end(), 0);
  f.arrow_map.resize(g->num_arrows());
  std::iota(f.arrow_map.begin(), f.arrow_map.end(), 0);
  return f;
}

GroupoidFunctor compose_functors(const GroupoidFunctor& second, const GroupoidFunctor& first) {
  if (!same_groupoid(first.target, second.source)) {
    throw MalformedError("functors are not composable");
  }
  GroupoidFunctor out{first.source, second.target, {}, {}};
  out.object_map.reserve(first.object_map.size());
  for (auto x : first.object_map) out.object_map.push_back(second.object_map[x]);
  out.arrow_map.reserve(first.arrow_map.size());
  for (auto f : first.arrow_map) out.arrow_map.push_back(second.arrow_map[f]);
  return out;
}

GroupoidFunctor constant_functor(const GroupoidPtr& source, const GroupoidPtr& target,
                                 ObjectId value) {
  return GroupoidFunctor{source, target, std::vector<ObjectId>(source->num_objects(), value),
                         std::vector<ArrowId>(source->num_arrows(), target->identity(value))};
}

ValidationReport validate_functor(const GroupoidFunctor& F) {
  const auto& s = *F.source;
  const auto& t = *F.target;
  if (F.object_map.size() != s.num_objects() || F.arrow_map.size() != s.num_arrows()) {
    throw MalformedError("functor maps do not match the source groupoid's size");
  }
  for (auto x : F.object_map) {
    if (x >= t.num_objects()) throw MalformedError("functor object image out of range");
  }
  for (auto f : F.arrow_map) {
    if (f >= t.num_arrows()) throw MalformedError("functor arrow image out of range");
  }
  ValidationReport r;
  std::vector<bool> ends_ok(s.num_arrows(), true);
  for (ArrowId f = 0; f < s.num_arrows(); ++f) {
    auto img = F.on_arrow(f);
    if (t.source(img) != F.on_object(s.source(f)) || t.target(img) != F.on_object(s.target(f))) {
      r.add("endpoints", {f});
      ends_ok[f] = false;
    }
  }
  for (ObjectId x = 0; x < s.num_objects(); ++x) {
    if (F.on_arrow(s.identity(x)) != t.identity(F.on_object(x))) r.add("identity", {x});
  }
  for (ArrowId f = 0; f < s.num_arrows(); ++f) {
    if (!ends_ok[f]) continue;
    for (auto g : s.out_arrows(s.target(f))) {
      if (!ends_ok[g]) continue;
      if (F.on_arrow(s.compose(g, f)) != t.compose(F.on_arrow(g), F.on_arrow(f))) {
        r.add("composition", {f, g});
      }
    }
  }
  return r;
}

NaturalIso identity_transformation(const GroupoidFunctor& f) {
  NaturalIso n{f, f, {}};
  for (auto x : f.object_map) n.components.push_back(f.target->identity(x));
  return n;
}

ValidationReport validate_nat_iso(const NaturalIso& n) {
  if (!same_groupoid(n.from.source, n.to.source) || !same_groupoid(n.from.target, n.to.target)) {
    throw MalformedError("natural isomorphism between functors with different endpoints");
  }
  const auto& s = *n.from.source;
  const auto& t = *n.from.target;
  if (n.components.size() != s.num_objects()) {
    throw MalformedError("expected " + str(s.num_objects()) + " components, got " +
                         str(n.components.size()));
  }
  ValidationReport r;
  std::vector<bool> typed(s.num_objects(), true);
  for (ObjectId x = 0; x < s.num_objects(); ++x) {
    auto c = n.components[x];
    if (c >= t.num_arrows()) throw MalformedError("component out of range");
    if (t.source(c) != n.from.on_object(x) || t.target(c) != n.to.on_object(x)) {
      r.add("component_type", {x});
      typed[x] = false;
    }
  }
  for (ArrowId f = 0; f < s.num_arrows(); ++f) {
    const auto x = s.source(f), y = s.target(f);
    if (!typed[x] || !typed[y]) continue;
    auto ff = n.from.on_arrow(f), gf = n.to.on_arrow(f);
    // Both sides are only defined when the functors respect endpoints.
    if (t.source(gf) != t.target(n.components[x]) || t.target(ff) != t.source(n.components[y]) ||
        t.source(ff) != t.source(n.components[x]) || t.target(gf) != t.target(n.components[y])) {
      r.add("naturality", {f}, "functor images have the wrong endpoints");
      continue;
    }
    if (t.compose(gf, n.components[x]) != t.compose(n.components[y], ff)) {
      r.add("naturality", {f});
    }
  }
  return r;
}

FiniteGroupoid discrete_groupoid(std::size_t num_objects) {
  std::vector<ArrowEnds> arrows;
  std::vector<ArrowId> ids;
  for (ObjectId x = 0; x < num_objects; ++x) {
    arrows.push_back({x, x});
    ids.push_back(x);
  }
  return FiniteGroupoid::build(num_objects, arrows, ids, [](ArrowId f, ArrowId) { return f; });
}

FiniteGroupoid pair_groupoid(std::size_t n) {
  std::vector<ArrowEnds> arrows;
  std::vector<ArrowId> ids(n);
  for (ObjectId x = 0; x < n; ++x) {
    for (ObjectId y = 0; y < n; ++y) {
      if (x == y) ids[x] = static_cast<ArrowId>(arrows.size());
      arrows.push_back({x, y});
    }
  }
  const auto m = static_cast<ArrowId>(n);
  return FiniteGroupoid::build(n, arrows, ids, [m](ArrowId f, ArrowId g) {
    return (f / m) * m + g % m;
  });
}

FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const auto na = a.num_objects(), nb = b.num_objects();
  const auto mb = static_cast<ArrowId>(b.num_arrows());
  std::vector<ArrowEnds> arrows;
  arrows.reserve(a.num_arrows() * b.num_arrows());
  for (ArrowId f = 0; f < a.num_arrows(); ++f) {
    for (ArrowId g = 0; g < b.num_arrows(); ++g) {
      arrows.push_back({static_cast<ObjectId>(a.source(f) * nb + b.source(g)),
                        static_cast<ObjectId>(a.target(f) * nb + b.target(g))});
    }
  }
  std::vector<ArrowId> ids;
  for (ObjectId x = 0; x < na; ++x) {
    for (ObjectId y = 0; y < nb; ++y) ids.push_back(a.identity(x) * mb + b.identity(y));
  }
  return FiniteGroupoid::build(na * nb, std::move(arrows), std::move(ids),
                               [&](ArrowId p, ArrowId q) {
                                 return a.compose(q / mb, p / mb) * mb + b.compose(q % mb, p % mb);
                               });
}

FiniteGroupoid relabel(const FiniteGroupoid& g, const std::vector<ObjectId>& object_perm,
                       const std::vector<ArrowId>& arrow_perm) {
  if (object_perm.size() != g.num_objects() || arrow_perm.size() != g.num_arrows()) {
    throw MalformedError("relabeling permutation has the wrong size");
  }
  std::vector<ArrowEnds> arrows(g.num_arrows());
  for (ArrowId f = 0; f < g.num_arrows(); ++f) {
    arrows[arrow_perm[f]] = {object_perm[g.source(f)], object_perm[g.target(f)]};
  }
  std::vector<ArrowId> ids(g.num_objects());
  for (ObjectId x = 0; x < g.num_objects(); ++x) ids[object_perm[x]] = arrow_perm[g.identity(x)];
  std::vector<CompositionEntry> comp;
  for (const auto& e : g.composition_entries()) {
    comp.push_back({arrow_perm[e.first], arrow_perm[e.second], arrow_perm[e.result]});
  }
  return FiniteGroupoid(g.num_objects(), std::move(arrows), std::move(ids), comp);
}

AutomorphismGroupOf automorphisms_of(const FiniteGroupoid& g, ObjectId x) {
  AutomorphismGroupOf out;
  out.arrows.push_back(g.identity(x));
  for (auto f : g.hom(x, x)) {
    if (f != g.identity(x)) out.arrows.push_back(f);
  }
  std::map<ArrowId, Element> index;
  for (Element i = 0; i < out.arrows.size(); ++i) index[out.arrows[i]] = i;
  const auto m = out.arrows.size();
  std::vector<std::vector<Element>> t(m, std::vector<Element>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) t[i][j] = index.at(g.compose(out.arrows[i], out.arrows[j]));
  }
  out.group = make_group(t);
  return out;
}

std::vector<ObjectId> component_representatives(const FiniteGroupoid& g) {
  std::vector<ObjectId> parent(g.num_objects());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<ObjectId(ObjectId)> find = [&](ObjectId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.arrows()) {
    auto a = find(e.source), b = find(e.target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<ObjectId> rep(g.num_objects());
  for (ObjectId x = 0; x < g.num_objects(); ++x) rep[x] = find(x);
  return rep;
}

Skeleton skeletonize(const GroupoidPtr& gp) {
  const auto& g = *gp;
  Skeleton s;
  auto label = component_representatives(g);
  std::vector<ObjectId> class_of_rep(g.num_objects(), kNone);
  for (ObjectId x = 0; x < g.num_objects(); ++x) {
    if (label[x] == x) {
      class_of_rep[x] = static_cast<ObjectId>(s.representatives.size());
      s.representatives.push_back(x);
    }
  }
  s.class_of.resize(g.num_objects());
  s.to_representative.resize(g.num_objects());
  for (ObjectId x = 0; x < g.num_objects(); ++x) {
    s.class_of[x] = class_of_rep[label[x]];
    s.to_representative[x] = label[x] == x ? g.identity(x) : g.hom(x, label[x]).front();
  }

  std::vector<ArrowEnds> arrows;
  std::vector<ArrowId> ids(s.representatives.size());
  std::vector<ArrowId> include_arrows;
  std::vector<ArrowId> skeleton_arrow(g.num_arrows(), kNone);
  for (ObjectId i = 0; i < s.representatives.size(); ++i) {
    auto r = s.representatives[i];
    for (auto f : g.hom(r, r)) {
      skeleton_arrow[f] = static_cast<ArrowId>(arrows.size());
      if (f == g.identity(r)) ids[i] = static_cast<ArrowId>(arrows.size());
      arrows.push_back({i, i});
      include_arrows.push_back(f);
    }
  }
  s.groupoid = share(FiniteGroupoid::build(
      s.representatives.size(), arrows, ids, [&](ArrowId f, ArrowId h) {
        return skeleton_arrow[g.compose(include_arrows[h], include_arrows[f])];
      }));

  s.include = GroupoidFunctor{s.groupoid, gp, s.representatives, include_arrows};
  s.collapse = GroupoidFunctor{gp, s.groupoid, s.class_of, {}};
  s.collapse.arrow_map.resize(g.num_arrows());
  for (ArrowId f = 0; f < g.num_arrows(); ++f) {
    auto cx = s.to_representative[g.source(f)];
    auto cy = s.to_representative[g.target(f)];
    auto loop = g.compose(cy, g.compose(f, g.inverse(cx)));
    s.collapse.arrow_map[f] = skeleton_arrow[loop];
  }
  return s;
}

bool is_faithful(const GroupoidFunctor& F) {
  const auto& s = *F.source;
  for (ObjectId x = 0; x < s.num_objects(); ++x) {
    for (ObjectId y = 0; y < s.num_objects(); ++y) {
      std::vector<ArrowId> images;
      for (auto f : s.hom(x, y)) images.push_back(F.on_arrow(f));
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    }
  }
  return true;
}

bool is_fully_faithful(const GroupoidFunctor& F) {
  const auto& s = *F.source;
  const auto& t = *F.target;
  for (ObjectId x = 0; x < s.num_objects(); ++x) {
    for (ObjectId y = 0; y < s.num_objects(); ++y) {
      if (s.hom(x, y).size() != t.hom(F.on_object(x), F.on_object(y)).size()) return false;
    }
  }
  return is_faithful(F);
}

bool is_essentially_surjective(const GroupoidFunctor& F) {
  auto label = component_representatives(*F.target);
  std::vector<bool> hit(F.target->num_objects(), false);
  for (auto x : F.object_map) hit[label[x]] = true;
  for (ObjectId y = 0; y < F.target->num_objects(); ++y) {
    if (!hit[label[y]]) return false;
  }
  return true;
}

bool is_equivalence(const GroupoidFunctor& F) {
  return validate_functor(F).ok() && is_fully_faithful(F) && is_essentially_surjective(F);
}

std::optional<NaturalIso> find_natural_iso(const GroupoidFunctor& F, const GroupoidFunctor& G) {
  if (!same_groupoid(F.source, G.source) || !same_groupoid(F.target, G.target)) {
    throw MalformedError("natural isomorphism between functors with different endpoints");
  }
  const auto& s = *F.source;
  const auto& t = *F.target;
  auto label = component_representatives(s);
  NaturalIso out{F, G, std::vector<ArrowId>(s.num_objects(), kNone)};
  std::vector<std::vector<ObjectId>> members(s.num_objects());
  for (ObjectId x = 0; x < s.num_objects(); ++x) members[label[x]].push_back(x);
  for (ObjectId r = 0; r < s.num_objects(); ++r) {
    if (label[r] != r) continue;
    bool found = false;
    for (auto eta_r : t.hom(F.on_object(r), G.on_object(r))) {
      // eta_x = G(c)^-1 . eta_r . F(c) for the chosen c : x -> r.
      bool ok = true;
      for (auto x : members[r]) {
        auto c = x == r ? s.identity(r) : s.hom(x, r).front();
        out.components[x] =
            t.compose(t.inverse(G.on_arrow(c)), t.compose(eta_r, F.on_arrow(c)));
      }
      for (auto x : members[r]) {
        for (auto f : s.out_arrows(x)) {
          auto y = s.target(f);
          if (t.compose(G.on_arrow(f), out.components[x]) !=
              t.compose(out.components[y], F.on_arrow(f))) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return out;
}

Verdict for_each_equivalence(const GroupoidPtr& a, const GroupoidPtr& b, std::size_t budget,
                             const std::function<bool(const GroupoidFunctor&)>& visit) {
  auto sa = skeletonize(a);
  auto sb = skeletonize(b);
  const auto na = sa.representatives.size();
  if (na != sb.representatives.size()) return Verdict::kFalse;

  std::vector<AutomorphismGroupOf> aut_a, aut_b;
  for (auto r : sa.representatives) aut_a.push_back(automorphisms_of(*a, r));
  for (auto r : sb.representatives) aut_b.push_back(automorphisms_of(*b, r));

  std::size_t nodes = 0;
  auto spend = [&](std::size_t n) {
    nodes += n;
    return nodes <= budget;
  };

  // Isomorphism type classes via pairwise tests; compatibility is an
  // equivalence relation, so matching type counts guarantee a bijection.
  std::vector<std::vector<char>> compatible(na, std::vector<char>(na, 0));
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      if (aut_a[i].group->order() != aut_b[j].group->order()) continue;
      bool found = false;
      auto used = for_each_isomorphism(*aut_a[i].group, *aut_b[j].group, budget - nodes,
                                       [&](const std::vector<Element>&) {
                                         found = true;
                                         return false;
                                       });
      if (used == kNone || !spend(used + 1)) return Verdict::kIndeterminate;
      compatible[i][j] = found;
    }
  }

  std::vector<ObjectId> match(na, kNone);
  std::vector<bool> used_b(na, false);
  std::function<bool(std::size_t)> match_rec = [&](std::size_t i) {
    if (i == na) return true;
    for (std::size_t j = 0; j < na; ++j) {
      if (used_b[j] || !compatible[i][j]) continue;
      match[i] = static_cast<ObjectId>(j);
      used_b[j] = true;
      if (match_rec(i + 1)) return true;
      used_b[j] = false;
    }
    return false;
  };
  // Compare type multisets first so a missing bijection is detected without
  // backtracking: class i's type must occur equally often on both sides.
  for (std::size_t i = 0; i < na; ++i) {
    std::size_t count_b = 0, count_a = 0;
    for (std::size_t j = 0; j < na; ++j) count_b += compatible[i][j];
    if (count_b == 0) return Verdict::kFalse;
    for (std::size_t k = 0; k < na; ++k) {
      bool same_type = false;
      for (std::size_t j = 0; j < na && !same_type; ++j) {
        same_type = compatible[i][j] && compatible[k][j];
      }
      count_a += same_type;
    }
    if (count_a != count_b) return Verdict::kFalse;
  }
  if (!match_rec(0)) return Verdict::kFalse;

  // Enumerate every bijection compatible with types, then every choice of
  // automorphism-group isomorphisms.
  std::vector<std::vector<std::vector<Element>>> iso_cache(na * na);
  auto isos = [&](std::size_t i, std::size_t j) -> const std::vector<std::vector<Element>>* {
    auto& slot = iso_cache[i * na + j];
    if (slot.empty()) {
      auto used = for_each_isomorphism(*aut_a[i].group, *aut_b[j].group, budget - nodes,
                                       [&](const std::vector<Element>& iso) {
                                         slot.push_back(iso);
                                         return true;
                                       });
      if (used == kNone || !spend(used + 1)) return nullptr;
    }
    return &slot;
  };

  std::vector<std::map<ArrowId, Element>> elem_a(na);
  for (std::size_t i = 0; i < na; ++i) {
    for (Element e = 0; e < aut_a[i].arrows.size(); ++e) elem_a[i][aut_a[i].arrows[e]] = e;
  }

  bool stop = false;
  bool exhausted = false;
  std::vector<const std::vector<Element>*> chosen(na, nullptr);
  auto emit = [&]() {
    GroupoidFunctor F{a, b, {}, {}};
    F.object_map.resize(a->num_objects());
    for (ObjectId x = 0; x < a->num_objects(); ++x) {
      F.object_map[x] = sb.representatives[match[sa.class_of[x]]];
    }
    F.arrow_map.resize(a->num_arrows());
    for (ArrowId f = 0; f < a->num_arrows(); ++f) {
      const auto i = sa.class_of[a->source(f)];
      auto loop = sa.include.on_arrow(sa.collapse.on_arrow(f));
      auto e = elem_a[i].at(loop);
      F.arrow_map[f] = aut_b[match[i]].arrows[(*chosen[i])[e]];
    }
    if (!visit(F)) stop = true;
  };

  std::function<void(std::size_t)> iso_rec = [&](std::size_t i) {
    if (stop) return;
    if (!spend(1)) {
      stop = exhausted = true;
      return;
    }
    if (i == na) {
      emit();
      return;
    }
    const auto* list = isos(i, match[i]);
    if (!list) {
      stop = exhausted = true;
      return;
    }
    for (const auto& iso : *list) {
      chosen[i] = &iso;
      iso_rec(i + 1);
      if (stop) return;
    }
  };

  std::fill(used_b.begin(), used_b.end(), false);
  std::function<void(std::size_t)> bij_rec = [&](std::size_t i) {
    if (stop) return;
    if (i == na) {
      iso_rec(0);
      return;
    }
    for (std::size_t j = 0; j < na && !stop; ++j) {
      if (used_b[j] || !compatible[i][j]) continue;
      match[i] = static_cast<ObjectId>(j);
      used_b[j] = true;
      bij_rec(i + 1);
      used_b[j] = false;
    }
  };
  bij_rec(0);
  return exhausted ? Verdict::kIndeterminate : Verdict::kTrue;
}

EquivalenceResult check_equivalence(const GroupoidPtr& a, const GroupoidPtr& b,
                                    std::size_t budget) {
  EquivalenceResult out;
  auto v = for_each_equivalence(a, b, budget, [&](const GroupoidFunctor& F) {
    out.witness = F;
    return false;
  });
  if (out.witness) {
    out.verdict = Verdict::kTrue;
  } else {
    out.verdict = v == Verdict::kTrue ? Verdict::kFalse : v;
  }
  return out;
}

}  // namespace stackt
