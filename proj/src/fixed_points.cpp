#include "stackt/fixed_points.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "arrow_path.hpp"

namespace stackt {

using detail::follow;

namespace {

class LinearizationSearch {
 public:
  LinearizationSearch(const WeakAction& a, ObjectId x, std::size_t budget)
      : a_(a), m_(a.space()), g_(a.group()), x_(x), budget_(budget), lin_(a.group_order(), kNone) {}

  std::vector<FixedObject> run() {
    auto start = m_.inverse(a_.unit(x_));
    std::vector<Element> trail;
    if (assign(0, start, trail)) dfs();
    return std::move(found_);
  }

 private:
  // alpha_{g,h}^x . g.alpha_h . alpha_g, or kNone.
  ArrowId product(Element g, Element h) const {
    return follow(m_, {lin_[g], a_.act_arrow(g, lin_[h]), a_.alpha(g, h, x_)});
  }

  // Sets slot g and closes under products. On failure the trail still lists
  // every slot assigned so the caller can undo.
  bool assign(Element g, ArrowId f, std::vector<Element>& trail) {
    std::vector<Element> queue = {g};
    lin_[g] = f;
    trail.push_back(g);
    while (!queue.empty()) {
      auto s = queue.back();
      queue.pop_back();
      for (Element t = 0; t < lin_.size(); ++t) {
        if (lin_[t] == kNone) continue;
        for (auto [p, q] : {std::pair{s, t}, std::pair{t, s}}) {
          auto forced = product(p, q);
          if (forced == kNone) return false;
          auto pq = g_.mul(p, q);
          if (lin_[pq] == kNone) {
            lin_[pq] = forced;
            trail.push_back(pq);
            queue.push_back(pq);
          } else if (lin_[pq] != forced) {
            return false;
          }
        }
      }
    }
    return true;
  }

  void undo(std::vector<Element>& trail) {
    for (auto g : trail) lin_[g] = kNone;
    trail.clear();
  }

  void dfs() {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("linearization search exceeded " + std::to_string(budget_) + " nodes");
    }
    auto it = std::find(lin_.begin(), lin_.end(), kNone);
    if (it == lin_.end()) {
      found_.push_back({x_, lin_});
      return;
    }
    const auto g = static_cast<Element>(it - lin_.begin());
    for (auto f : m_.hom(x_, a_.act(g, x_))) {
      std::vector<Element> trail;
      if (assign(g, f, trail)) dfs();
      undo(trail);
    }
  }

  const WeakAction& a_;
  const FiniteGroupoid& m_;
  const FiniteGroup& g_;
  ObjectId x_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<ArrowId> lin_;
  std::vector<FixedObject> found_;
};

}  // namespace

bool is_linearization(const WeakAction& a, ObjectId x, const std::vector<ArrowId>& lin) {
  const auto& m = a.space();
  const auto& G = a.group();
  const auto n = a.group_order();
  if (x >= a.num_objects() || lin.size() != n) return false;
  for (Element g = 0; g < n; ++g) {
    if (!detail::has_ends(m, lin[g], x, a.act(g, x))) return false;
  }
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      if (follow(m, {lin[g], a.act_arrow(g, lin[h]), a.alpha(g, h, x)}) != lin[G.mul(g, h)])
        return false;
    }
  }
  return true;
}

std::vector<FixedObject> enumerate_fixed_objects(const WeakAction& a, ObjectId x,
                                                 std::size_t budget) {
  if (x >= a.num_objects()) throw std::out_of_range("unknown object " + std::to_string(x));
  return LinearizationSearch(a, x, budget).run();
}

FixedPointResult fixed_point_groupoid(const ActionPtr& ap, std::size_t budget) {
  auto report = validate_action(*ap);
  if (!report.ok()) throw InvalidInput("fixed points of an invalid action", report);
  const auto& a = *ap;
  const auto& m = a.space();
  const auto order = a.group_order();

  FixedPointResult out;
  out.input = ap;
  for (ObjectId x = 0; x < a.num_objects(); ++x) {
    auto fx = enumerate_fixed_objects(a, x, budget);
    out.objects.insert(out.objects.end(), fx.begin(), fx.end());
  }
  const auto n = out.objects.size();

  auto compatible = [&](const FixedObject& s, const FixedObject& t, ArrowId phi) {
    for (Element g = 0; g < order; ++g) {
      if (follow(m, {phi, t.lin[g]}) != follow(m, {s.lin[g], a.act_arrow(g, phi)})) return false;
    }
    return true;
  };

  std::vector<ArrowEnds> ends;
  std::vector<ArrowId> underlying;
  std::vector<std::size_t> offset(n * n + 1, 0);
  for (ObjectId s = 0; s < n; ++s) {
    for (ObjectId t = 0; t < n; ++t) {
      offset[s * n + t] = underlying.size();
      for (auto phi : m.hom(out.objects[s].x, out.objects[t].x)) {
        if (!compatible(out.objects[s], out.objects[t], phi)) continue;
        ends.push_back({s, t});
        underlying.push_back(phi);
      }
    }
  }
  offset[n * n] = underlying.size();
  auto lookup = [&](ObjectId s, ObjectId t, ArrowId phi) -> ArrowId {
    auto b = underlying.begin() + static_cast<std::ptrdiff_t>(offset[s * n + t]);
    auto e = underlying.begin() + static_cast<std::ptrdiff_t>(offset[s * n + t + 1]);
    auto it = std::lower_bound(b, e, phi);
    if (it == e || *it != phi) throw MalformedError("fixed-point arrows are not closed");
    return static_cast<ArrowId>(it - underlying.begin());
  };
  std::vector<ArrowId> ids;
  for (ObjectId s = 0; s < n; ++s) ids.push_back(lookup(s, s, m.identity(out.objects[s].x)));
  auto compose = [&](ArrowId first, ArrowId second) {
    return lookup(ends[first].source, ends[second].target,
                  m.compose(underlying[second], underlying[first]));
  };
  auto copy = ends;
  out.groupoid = share(FiniteGroupoid::build(n, std::move(copy), std::move(ids), compose));

  out.epsilon = GroupoidFunctor{out.groupoid, a.space_ptr(), {}, underlying};
  for (const auto& o : out.objects) out.epsilon.object_map.push_back(o.x);
  return out;
}

GMorphism epsilon_g_morphism(const FixedPointResult& fp) {
  const auto& a = *fp.input;
  auto trivial = share(trivial_action(a.group_ptr(), fp.groupoid));
  std::vector<ArrowId> sigma;
  for (Element g = 0; g < a.group_order(); ++g) {
    for (const auto& o : fp.objects) sigma.push_back(a.space().inverse(o.lin[g]));
  }
  return GMorphism{trivial, fp.input, fp.epsilon, std::move(sigma)};
}

EquivarianceSearch is_essentially_trivial(const ActionPtr& a, std::size_t budget) {
  FixedPointResult fp;
  try {
    fp = fixed_point_groupoid(a, budget);
  } catch (const BudgetExceeded&) {
    return {};
  }
  if (is_equivalence(fp.epsilon)) return {Verdict::kTrue, epsilon_g_morphism(fp)};
  auto trivial = share(trivial_action(a->group_ptr(), fp.groupoid));
  return find_g_isomorphism(trivial, a, budget);
}

EquivarianceSearch is_isomorphic_to_trivial(const ActionPtr& a, std::size_t budget) {
  return find_g_isomorphism(share(trivial_action(a->group_ptr(), a->space_ptr())), a, budget);
}

}  // namespace stackt
