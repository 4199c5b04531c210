#pragma once

// Direct, unoptimized restatements of the weak-action and G-morphism axioms.
// These evaluate every identity from the raw tables and share no code with
// the library validators.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "stackt/action.hpp"

namespace oracle {

using stackt::ArrowId;
using stackt::Element;
using stackt::FiniteGroupoid;
using stackt::GroupoidFunctor;
using stackt::ObjectId;
using stackt::G2Morphism;
using stackt::WeakAction;

class Arrows {
 public:
  explicit Arrows(const FiniteGroupoid& m) : m_(m) {
    for (const auto& e : m.composition_entries()) table_[key(e.first, e.second)] = e.result;
  }

  bool typed(ArrowId f, ObjectId s, ObjectId t) const {
    return f < m_.num_arrows() && m_.source(f) == s && m_.target(f) == t;
  }
  // g . f, or -1 when not composable.
  long long comp(long long g, long long f) const {
    if (f < 0 || g < 0) return -1;
    auto it = table_.find(key(static_cast<ArrowId>(f), static_cast<ArrowId>(g)));
    return it == table_.end() ? -1 : it->second;
  }

 private:
  static std::uint64_t key(ArrowId first, ArrowId second) {
    return (std::uint64_t{first} << 32) | second;
  }
  const FiniteGroupoid& m_;
  std::unordered_map<std::uint64_t, ArrowId> table_;
};

inline bool functor_ok(const GroupoidFunctor& F) {
  const auto& s = *F.source;
  const auto& t = *F.target;
  for (ArrowId f = 0; f < s.num_arrows(); ++f) {
    auto img = F.arrow_map[f];
    if (t.source(img) != F.object_map[s.source(f)] || t.target(img) != F.object_map[s.target(f)])
      return false;
  }
  for (ObjectId x = 0; x < s.num_objects(); ++x) {
    if (F.arrow_map[s.identity(x)] != t.identity(F.object_map[x])) return false;
  }
  Arrows T(t);
  for (const auto& e : s.composition_entries()) {
    if (T.comp(F.arrow_map[e.second], F.arrow_map[e.first]) != F.arrow_map[e.result]) return false;
  }
  return true;
}

/// Typing of composites, unit laws, associativity and inverses, read off the
/// composition entries.
inline bool groupoid_axioms(const FiniteGroupoid& m) {
  Arrows A(m);
  for (const auto& e : m.composition_entries()) {
    if (!A.typed(e.result, m.source(e.first), m.target(e.second))) return false;
  }
  for (ObjectId x = 0; x < m.num_objects(); ++x) {
    if (!A.typed(m.identity(x), x, x)) return false;
  }
  for (ArrowId f = 0; f < m.num_arrows(); ++f) {
    if (A.comp(f, m.identity(m.source(f))) != f || A.comp(m.identity(m.target(f)), f) != f) return false;
    bool invertible = false;
    for (ArrowId g = 0; g < m.num_arrows() && !invertible; ++g) {
      invertible = A.comp(g, f) == m.identity(m.source(f)) && A.comp(f, g) == m.identity(m.target(f));
    }
    if (!invertible) return false;
    for (ArrowId g = 0; g < m.num_arrows(); ++g) {
      if (m.source(g) != m.target(f)) continue;
      for (ArrowId h = 0; h < m.num_arrows(); ++h) {
        if (m.source(h) != m.target(g)) continue;
        if (A.comp(h, A.comp(g, f)) != A.comp(A.comp(h, g), f)) return false;
      }
    }
  }
  return true;
}

inline bool action_axioms(const WeakAction& a) {
  const auto& m = a.space();
  const auto& G = a.group();
  Arrows A(m);
  const auto n = static_cast<Element>(a.group_order());
  for (Element g = 0; g < n; ++g) {
    if (!functor_ok(a.mu(g))) return false;
  }
  for (Element g = 0; g < n; ++g) {
    for (Element h = 0; h < n; ++h) {
      for (ObjectId x = 0; x < m.num_objects(); ++x) {
        if (!A.typed(a.alpha(g, h, x), a.act(g, a.act(h, x)), a.act(G.mul(g, h), x))) return false;
      }
      for (ArrowId f = 0; f < m.num_arrows(); ++f) {
        auto x = m.source(f), y = m.target(f);
        auto lhs = A.comp(a.alpha(g, h, y), a.act_arrow(g, a.act_arrow(h, f)));
        if (lhs < 0 || lhs != A.comp(a.act_arrow(G.mul(g, h), f), a.alpha(g, h, x))) return false;
      }
    }
  }
  for (ObjectId x = 0; x < m.num_objects(); ++x) {
    if (!A.typed(a.unit(x), a.act(0, x), x)) return false;
  }
  for (ArrowId f = 0; f < m.num_arrows(); ++f) {
    auto lhs = A.comp(a.unit(m.target(f)), a.act_arrow(0, f));
    if (lhs < 0 || lhs != A.comp(f, a.unit(m.source(f)))) return false;
  }
  for (Element g = 0; g < n; ++g)
    for (Element h = 0; h < n; ++h)
      for (Element k = 0; k < n; ++k)
        for (ObjectId x = 0; x < m.num_objects(); ++x) {
          auto lhs = A.comp(a.alpha(g, G.mul(h, k), x), a.act_arrow(g, a.alpha(h, k, x)));
          auto rhs = A.comp(a.alpha(G.mul(g, h), k, x), a.alpha(g, h, a.act(k, x)));
          if (lhs < 0 || lhs != rhs) return false;
        }
  for (ObjectId x = 0; x < m.num_objects(); ++x) {
    if (a.act_arrow(0, a.unit(x)) != a.alpha(0, 0, x)) return false;
  }
  return true;
}

/// (f, sigma) is a G-morphism a -> b; sigma indexed g * |Ob(a)| + x.
inline bool g_morphism_axioms(const WeakAction& a, const WeakAction& b, const GroupoidFunctor& f,
                              const std::vector<ArrowId>& sigma) {
  if (!functor_ok(f)) return false;
  const auto& ms = a.space();
  const auto& mt = b.space();
  const auto& G = a.group();
  Arrows B(mt);
  const auto no = ms.num_objects();
  const auto n = static_cast<Element>(a.group_order());
  auto s = [&](Element g, ObjectId x) { return sigma[g * no + x]; };
  for (Element g = 0; g < n; ++g) {
    for (ObjectId x = 0; x < no; ++x) {
      if (!B.typed(s(g, x), b.act(g, f.object_map[x]), f.object_map[a.act(g, x)])) return false;
    }
    for (ArrowId p = 0; p < ms.num_arrows(); ++p) {
      auto x = ms.source(p), y = ms.target(p);
      auto lhs = B.comp(s(g, y), b.act_arrow(g, f.arrow_map[p]));
      if (lhs < 0 || lhs != B.comp(f.arrow_map[a.act_arrow(g, p)], s(g, x))) return false;
    }
  }
  for (Element g = 0; g < n; ++g)
    for (Element h = 0; h < n; ++h)
      for (ObjectId x = 0; x < no; ++x) {
        auto lhs = B.comp(f.arrow_map[a.alpha(g, h, x)],
                          B.comp(s(g, a.act(h, x)), b.act_arrow(g, s(h, x))));
        auto rhs = B.comp(s(G.mul(g, h), x), b.alpha(g, h, f.object_map[x]));
        if (lhs < 0 || lhs != rhs) return false;
      }
  for (ObjectId x = 0; x < no; ++x) {
    if (B.comp(f.arrow_map[a.unit(x)], s(0, x)) != b.unit(f.object_map[x])) return false;
  }
  return true;
}

// Naturality of tau and sigma_2 . g.tau = tau . sigma_1, from the raw tables.
inline bool two_morphism_axioms(const G2Morphism& t) {
  const auto& a = *t.source.source;
  const auto& b = *t.source.target;
  const auto& sp = a.space();
  Arrows B(b.space());
  for (ObjectId x = 0; x < sp.num_objects(); ++x) {
    if (!B.typed(t.tau[x], t.source.functor.object_map[x], t.target.functor.object_map[x]))
      return false;
  }
  for (ArrowId f = 0; f < sp.num_arrows(); ++f) {
    auto lhs = B.comp(t.target.functor.arrow_map[f], t.tau[sp.source(f)]);
    if (lhs < 0 || lhs != B.comp(t.tau[sp.target(f)], t.source.functor.arrow_map[f])) return false;
  }
  for (Element g = 0; g < a.group_order(); ++g) {
    for (ObjectId x = 0; x < sp.num_objects(); ++x) {
      auto lhs = B.comp(t.target.sigma_at(g, x), b.act_arrow(g, t.tau[x]));
      if (lhs < 0 || lhs != B.comp(t.tau[a.act(g, x)], t.source.sigma_at(g, x))) return false;
    }
  }
  return true;
}

}  // namespace oracle
