#include "stackt/quotient.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>

#include "arrow_path.hpp"

namespace stackt {

using detail::follow;
using detail::inverse_or_none;

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

constexpr std::size_t kSaturated = std::size_t{1} << 62;

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

}  // namespace

ArrowId QuotientGroupoid::arrow_of(ObjectId x, Element g, ArrowId phi) const {
  const auto& a = *input;
  const auto& m = a.space();
  if (x >= a.num_objects() || g >= a.group_order() || phi >= m.num_arrows()) return kNone;
  if (m.source(phi) != a.act(g, x)) return kNone;
  return static_cast<ArrowId>(block_offset[x * a.group_order() + g] + m.out_position(phi));
}

QuotientGroupoid quotient_groupoid(const ActionPtr& ap) {
  auto report = validate_action(*ap);
  if (!report.ok()) throw InvalidInput("quotient of an invalid action", report);
  const auto& a = *ap;
  const auto& G = a.group();
  const auto& m = a.space();
  const auto n = a.group_order();
  const auto no = a.num_objects();

  QuotientGroupoid q;
  q.input = ap;
  q.block_offset.assign(no * n + 1, 0);
  std::vector<ArrowEnds> ends;
  for (ObjectId x = 0; x < no; ++x) {
    for (Element g = 0; g < n; ++g) {
      q.block_offset[x * n + g] = q.arrows.size();
      for (auto phi : m.out_arrows(a.act(g, x))) {
        q.arrows.push_back({g, phi});
        ends.push_back({x, m.target(phi)});
      }
    }
  }
  q.block_offset[no * n] = q.arrows.size();

  std::vector<ArrowId> ids;
  for (ObjectId x = 0; x < no; ++x) ids.push_back(q.arrow_of(x, 0, a.unit(x)));
  auto compose = [&](ArrowId first, ArrowId second) {
    const auto [g, phi] = q.arrows[first];
    const auto [h, psi] = q.arrows[second];
    const auto x = ends[first].source;
    auto r = follow(m, {m.inverse(a.alpha(h, g, x)), a.act_arrow(h, phi), psi});
    auto id = q.arrow_of(x, G.mul(h, g), r);
    if (id == kNone) throw MalformedError("quotient composite is ill-typed");
    return id;
  };
  auto copy = ends;
  q.space = share(FiniteGroupoid::build(no, std::move(copy), std::move(ids), compose));

  q.pi = GroupoidFunctor{a.space_ptr(), q.space, {}, {}};
  for (ObjectId x = 0; x < no; ++x) q.pi.object_map.push_back(x);
  for (ArrowId phi = 0; phi < m.num_arrows(); ++phi) {
    q.pi.arrow_map.push_back(q.arrow_of(m.source(phi), 0, follow(m, {a.unit(m.source(phi)), phi})));
  }
  return q;
}

ValidationReport pi_equivariance_check(const ActionPtr& ap, const QuotientGroupoid& q) {
  const auto& a = *ap;
  const auto& G = a.group();
  const auto& m = a.space();
  const auto& s = *q.space;
  const auto n = static_cast<Element>(a.group_order());
  const auto no = static_cast<ObjectId>(a.num_objects());
  if (s.num_objects() != no || q.arrows.size() != s.num_arrows() ||
      q.block_offset.size() != no * a.group_order() + 1) {
    throw MalformedError("quotient does not match the action's shape");
  }
  ValidationReport report;
  report.merge(validate_groupoid(s), "space.");
  report.merge(validate_functor(q.pi), "pi.");

  for (ObjectId x = 0; x < no; ++x) {
    if (s.identity(x) != q.arrow_of(x, 0, a.unit(x))) {
      report.add("identity", {x}, "identity is not (1, a^x)");
    }
  }
  for (const auto& e : s.composition_entries()) {
    const auto [g, phi] = q.arrows[e.first];
    const auto [h, psi] = q.arrows[e.second];
    const auto x = s.source(e.first);
    auto r = follow(m, {inverse_or_none(m, a.alpha(h, g, x)), a.act_arrow(h, phi), psi});
    if (q.arrow_of(x, G.mul(h, g), r) != e.result) {
      report.add("composition", {e.first, e.second}, "table entry differs from the composition law");
    }
  }
  for (ArrowId phi = 0; phi < m.num_arrows(); ++phi) {
    const auto x = m.source(phi);
    if (q.pi.arrow_map[phi] != q.arrow_of(x, 0, follow(m, {a.unit(x), phi}))) {
      report.add("pi_arrow", {phi}, "pi(phi) is not (1, phi . a^x)");
    }
  }

  std::vector<ArrowId> sigma;
  for (Element g = 0; g < n; ++g) {
    for (ObjectId x = 0; x < no; ++x) {
      const auto gx = a.act(g, x);
      const auto gi = G.inverse(g);
      auto forward = q.arrow_of(x, g, m.identity(gx));
      auto back = q.arrow_of(gx, gi, follow(m, {a.alpha(gi, g, x), a.unit(x)}));
      sigma.push_back(forward);
      if (back == kNone || forward == kNone) {
        report.add("canonical", {g, x}, "canonical arrow is ill-typed");
        continue;
      }
      if (follow(s, {forward, back}) != s.identity(x) ||
          follow(s, {back, forward}) != s.identity(gx)) {
        report.add("canonical_inverse", {g, x}, "canonical arrows are not mutually inverse");
      }
    }
  }
  if (report.ok()) {
    auto trivial = share(trivial_action(a.group_ptr(), q.space));
    GMorphism pm{ap, trivial, q.pi, std::move(sigma)};
    report.merge(validate_g_morphism(pm), "equivariance.");
  }
  return report;
}

TorsorQuotient::TorsorQuotient(ActionPtr ap) : a_(std::move(ap)) {
  auto report = validate_action(*a_);
  if (!report.ok()) throw InvalidInput("torsor quotient of an invalid action", report);
  const auto& a = *a_;
  offset_.assign(a.num_objects() + 1, 0);
  for (ObjectId x = 0; x < a.num_objects(); ++x) {
    std::size_t count = 1;
    for (Element g = 1; g < a.group_order(); ++g) {
      count = saturating_mul(count, a.space().out_arrows(a.act(g, x)).size());
    }
    offset_[x + 1] = std::min(kSaturated, offset_[x] + count);
  }
  total_ = offset_.back();
}

TorsorObject TorsorQuotient::object(std::size_t index) const {
  if (index >= total_) throw std::out_of_range("torsor object index out of range");
  const auto& a = *a_;
  const auto x =
      static_cast<ObjectId>(std::upper_bound(offset_.begin(), offset_.end(), index) - offset_.begin() - 1);
  auto r = index - offset_[x];
  TorsorObject o{x, std::vector<ArrowId>(a.group_order())};
  o.sigma[0] = a.unit(x);
  for (auto g = static_cast<Element>(a.group_order() - 1); g >= 1; --g) {
    auto out = a.space().out_arrows(a.act(g, x));
    o.sigma[g] = out[r % out.size()];
    r /= out.size();
  }
  return o;
}

std::size_t TorsorQuotient::index_of(const TorsorObject& o) const {
  const auto& a = *a_;
  const auto& m = a.space();
  if (o.x >= a.num_objects() || o.sigma.size() != a.group_order() || o.sigma[0] != a.unit(o.x)) {
    throw std::invalid_argument("not a torsor object");
  }
  std::size_t r = 0;
  for (Element g = 1; g < a.group_order(); ++g) {
    const auto f = o.sigma[g];
    if (f >= m.num_arrows() || m.source(f) != a.act(g, o.x)) {
      throw std::invalid_argument("not a torsor object");
    }
    r = r * m.out_arrows(a.act(g, o.x)).size() + m.out_position(f);
  }
  return offset_[o.x] + r;
}

ObjectId TorsorQuotient::value(const TorsorObject& o, Element g) const {
  return a_->space().target(o.sigma[g]);
}

ArrowId TorsorQuotient::sigma(const TorsorObject& o, Element g, Element h) const {
  const auto& a = *a_;
  const auto& m = a.space();
  return follow(m, {inverse_or_none(m, a.act_arrow(g, o.sigma[h])), a.alpha(g, h, o.x),
                    o.sigma[a.group().mul(g, h)]});
}

ArrowId TorsorQuotient::alpha(const TorsorObject& s, const TorsorObject& t,
                              const TorsorMorphism& mor, Element e) const {
  const auto& a = *a_;
  const auto& m = a.space();
  if (mor.c >= a.group_order() || !detail::has_ends(m, mor.alpha1, s.x, value(t, mor.c))) {
    return kNone;
  }
  return follow(m, {inverse_or_none(m, s.sigma[e]), a.act_arrow(e, mor.alpha1), sigma(t, e, mor.c)});
}

bool TorsorQuotient::is_morphism(const TorsorObject& s, const TorsorObject& t,
                                 const TorsorMorphism& mor) const {
  const auto& a = *a_;
  const auto& G = a.group();
  const auto& m = a.space();
  const auto n = static_cast<Element>(a.group_order());
  std::vector<ArrowId> al(n);
  for (Element e = 0; e < n; ++e) {
    al[e] = alpha(s, t, mor, e);
    if (al[e] == kNone) return false;
  }
  if (al[0] != mor.alpha1) return false;
  for (Element g = 0; g < n; ++g) {
    for (Element e = 0; e < n; ++e) {
      auto lhs = follow(m, {a.act_arrow(g, al[e]), sigma(t, g, G.mul(e, mor.c))});
      auto rhs = follow(m, {sigma(s, g, e), al[G.mul(g, e)]});
      if (lhs == kNone || lhs != rhs) return false;
    }
  }
  return true;
}

std::vector<TorsorMorphism> TorsorQuotient::hom(const TorsorObject& s, const TorsorObject& t) const {
  std::vector<TorsorMorphism> out;
  for (Element c = 0; c < a_->group_order(); ++c) {
    for (auto f : a_->space().hom(s.x, value(t, c))) {
      TorsorMorphism mor{c, f};
      if (is_morphism(s, t, mor)) out.push_back(mor);
    }
  }
  return out;
}

TorsorMorphism TorsorQuotient::identity(const TorsorObject& s) const {
  return {0, a_->space().identity(s.x)};
}

TorsorMorphism TorsorQuotient::compose(const TorsorObject& s, const TorsorObject& t,
                                       const TorsorObject& r, const TorsorMorphism& first,
                                       const TorsorMorphism& second) const {
  (void)s;
  return {a_->group().mul(first.c, second.c),
          follow(a_->space(), {first.alpha1, alpha(t, r, second, first.c)})};
}

TorsorObject TorsorQuotient::transport(const TorsorObject& s, Element c,
                                       const std::vector<ArrowId>& al) const {
  const auto& a = *a_;
  const auto& G = a.group();
  const auto& m = a.space();
  const auto ci = G.inverse(c);
  TorsorObject t{m.target(al[ci]), std::vector<ArrowId>(a.group_order())};
  for (Element g = 0; g < a.group_order(); ++g) {
    t.sigma[g] = follow(m, {inverse_or_none(m, a.act_arrow(g, al[ci])), sigma(s, g, ci),
                            al[G.mul(g, ci)]});
  }
  return t;
}

TorsorQuotientResult TorsorQuotient::materialize(std::size_t max_table) const {
  const auto& a = *a_;
  const auto& m = a.space();
  const auto n = static_cast<Element>(a.group_order());
  if (total_ > max_table) {
    throw BudgetExceeded("torsor quotient has " + str(total_) + " objects");
  }
  TorsorQuotientResult out;
  for (std::size_t i = 0; i < total_; ++i) out.objects.push_back(object(i));
  std::size_t table = 0;
  for (const auto& s : out.objects) {
    std::size_t deg = n;
    for (Element e = 0; e < n; ++e) deg = saturating_mul(deg, m.out_arrows(value(s, e)).size());
    table = std::min(kSaturated, table + saturating_mul(deg, deg));
    if (table > max_table) {
      throw BudgetExceeded("torsor quotient composition table exceeds " + str(max_table));
    }
  }

  std::vector<ArrowEnds> ends;
  out.source_offset.push_back(0);
  for (ObjectId si = 0; si < total_; ++si) {
    const auto& s = out.objects[si];
    std::vector<std::tuple<ObjectId, Element, ArrowId>> block;
    std::vector<std::span<const ArrowId>> choices;
    for (Element e = 0; e < n; ++e) choices.push_back(m.out_arrows(value(s, e)));
    std::vector<std::size_t> idx(n, 0);
    std::vector<ArrowId> al(n);
    for (Element c = 0; c < n; ++c) {
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        for (Element e = 0; e < n; ++e) al[e] = choices[e][idx[e]];
        auto t = transport(s, c, al);
        block.emplace_back(static_cast<ObjectId>(index_of(t)), c, al[0]);
        Element i = n;
        while (i > 0 && ++idx[i - 1] == choices[i - 1].size()) idx[--i] = 0;
        if (i == 0) break;
      }
    }
    std::sort(block.begin(), block.end());
    for (const auto& [ti, c, f] : block) {
      ends.push_back({si, ti});
      out.arrows.push_back({c, f});
    }
    out.source_offset.push_back(out.arrows.size());
  }

  auto lookup = [&](ObjectId s, ObjectId t, const TorsorMorphism& mor) -> ArrowId {
    auto key = std::tuple(t, mor.c, mor.alpha1);
    auto lo = out.source_offset[s];
    auto hi = out.source_offset[s + 1];
    while (lo < hi) {
      auto mid = (lo + hi) / 2;
      if (std::tuple(ends[mid].target, out.arrows[mid].c, out.arrows[mid].alpha1) < key) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo == out.source_offset[s + 1] || ends[lo].target != t || !(out.arrows[lo] == mor)) {
      return kNone;
    }
    return static_cast<ArrowId>(lo);
  };
  std::vector<ArrowId> ids;
  for (ObjectId s = 0; s < total_; ++s) ids.push_back(lookup(s, s, identity(out.objects[s])));
  auto compose_fn = [&](ArrowId first, ArrowId second) {
    const auto s = ends[first].source;
    const auto t = ends[first].target;
    const auto r = ends[second].target;
    auto mor = compose(out.objects[s], out.objects[t], out.objects[r], out.arrows[first],
                       out.arrows[second]);
    auto id = lookup(s, r, mor);
    if (id == kNone) throw MalformedError("torsor composite is missing");
    return id;
  };
  auto copy = ends;
  out.space = share(FiniteGroupoid::build(total_, std::move(copy), std::move(ids), compose_fn));
  return out;
}

ArrowId TorsorQuotientResult::arrow_of(ObjectId s, ObjectId t, const TorsorMorphism& m) const {
  if (s + 1 >= source_offset.size()) return kNone;
  for (auto i = source_offset[s]; i < source_offset[s + 1]; ++i) {
    if (space->target(static_cast<ArrowId>(i)) == t && arrows[i] == m) return static_cast<ArrowId>(i);
  }
  return kNone;
}

GMorphism TorsorQuotient::as_g_morphism(const TorsorObject& o, const ActionPtr& torsor) const {
  const auto& a = *a_;
  const auto& e = torsor->space();
  GroupoidFunctor f{torsor->space_ptr(), a.space_ptr(), {}, std::vector<ArrowId>(e.num_arrows())};
  for (Element g = 0; g < a.group_order(); ++g) {
    f.object_map.push_back(value(o, g));
    f.arrow_map[e.identity(g)] = a.space().identity(value(o, g));
  }
  std::vector<ArrowId> sig;
  for (Element g = 0; g < a.group_order(); ++g) {
    for (Element h = 0; h < a.group_order(); ++h) sig.push_back(sigma(o, g, h));
  }
  return GMorphism{torsor, a_, std::move(f), std::move(sig)};
}

TorsorQuotientResult torsor_quotient_groupoid(const ActionPtr& a, std::size_t max_table) {
  return TorsorQuotient(a).materialize(max_table);
}

QuotientComparison compare_quotients(const ActionPtr& ap, std::size_t budget,
                                     std::size_t materialize_limit) {
  const auto& a = *ap;
  const auto& G = a.group();
  const auto& m = a.space();
  const auto no = static_cast<ObjectId>(a.num_objects());
  const auto n = static_cast<Element>(a.group_order());
  auto q = quotient_groupoid(ap);
  TorsorQuotient tq(ap);
  QuotientComparison out;
  out.torsor_objects = tq.num_objects();
  auto fail = [&](std::string why) {
    out.verdict = Verdict::kFalse;
    out.failure = std::move(why);
    return out;
  };

  std::vector<TorsorObject> image;
  std::vector<std::size_t> image_index;
  for (ObjectId x = 0; x < no; ++x) {
    TorsorObject o{a.act(0, x), {}};
    for (Element g = 0; g < n; ++g) o.sigma.push_back(a.alpha(g, 0, x));
    try {
      image_index.push_back(tq.index_of(o));
    } catch (const std::invalid_argument&) {
      return fail("u'(" + str(x) + ") is not a torsor object");
    }
    image.push_back(std::move(o));
  }
  const auto& s = *q.space;
  std::vector<TorsorMorphism> amap;
  for (ArrowId f = 0; f < s.num_arrows(); ++f) {
    const auto [g, phi] = q.arrows[f];
    const auto x = s.source(f);
    const auto gi = G.inverse(g);
    TorsorMorphism mor{gi, follow(m, {m.inverse(a.alpha(gi, g, x)), a.act_arrow(gi, phi)})};
    if (!tq.is_morphism(image[x], image[s.target(f)], mor)) {
      return fail("u'(arrow " + str(f) + ") is not a morphism");
    }
    amap.push_back(mor);
  }
  for (ObjectId x = 0; x < no; ++x) {
    if (!(amap[s.identity(x)] == tq.identity(image[x]))) {
      return fail("u' does not preserve the identity of " + str(x));
    }
  }
  for (const auto& e : s.composition_entries()) {
    auto c = tq.compose(image[s.source(e.first)], image[s.target(e.first)],
                        image[s.target(e.second)], amap[e.first], amap[e.second]);
    if (!(c == amap[e.result])) {
      return fail("u' does not preserve the composite of " + str(e.first) + " and " +
                  str(e.second));
    }
  }
  for (ObjectId x = 0; x < no; ++x) {
    for (ObjectId y = 0; y < no; ++y) {
      auto hq = s.hom(x, y);
      auto ht = tq.hom(image[x], image[y]);
      std::vector<TorsorMorphism> img;
      for (auto f : hq) img.push_back(amap[f]);
      auto key = [](const TorsorMorphism& l, const TorsorMorphism& r) {
        return std::tie(l.c, l.alpha1) < std::tie(r.c, r.alpha1);
      };
      std::sort(img.begin(), img.end(), key);
      if (ht.size() != hq.size() || !(img == ht)) {
        return fail("u' is not bijective on hom(" + str(x) + "," + str(y) + ")");
      }
    }
  }
  if (tq.num_objects() > budget) {
    out.failure = "torsor side has more than " + str(budget) + " objects";
    return out;
  }
  for (std::size_t i = 0; i < tq.num_objects(); ++i) {
    auto t = tq.object(i);
    bool found = false;
    for (ObjectId k = 0; k <= no && !found; ++k) {
      // The base object of t first, then the rest in order.
      const ObjectId x = k == 0 ? t.x : k - 1;
      if (k > 0 && x == t.x) continue;
      for (Element c = 0; c < n && !found; ++c) {
        for (auto f : m.hom(image[x].x, tq.value(t, c))) {
          if (tq.is_morphism(image[x], t, {c, f})) {
            found = true;
            break;
          }
        }
      }
    }
    if (!found) return fail("torsor object " + str(i) + " is not in the essential image");
  }

  try {
    auto r = tq.materialize(materialize_limit);
    GroupoidFunctor w{q.space, r.space, {}, {}};
    for (ObjectId x = 0; x < no; ++x) w.object_map.push_back(static_cast<ObjectId>(image_index[x]));
    for (ArrowId f = 0; f < s.num_arrows(); ++f) {
      w.arrow_map.push_back(r.arrow_of(w.object_map[s.source(f)], w.object_map[s.target(f)], amap[f]));
      if (w.arrow_map.back() == kNone) return fail("u'(arrow " + str(f) + ") is missing");
    }
    if (!validate_functor(w).ok() || !is_equivalence(w)) {
      return fail("u' is not an equivalence onto the materialized torsor groupoid");
    }
    auto eq = check_equivalence(q.space, r.space, budget);
    if (eq.verdict == Verdict::kFalse) return fail("quotients are not equivalent");
    out.witness = std::move(w);
  } catch (const BudgetExceeded&) {
  }
  out.verdict = Verdict::kTrue;
  return out;
}

}  // namespace stackt
