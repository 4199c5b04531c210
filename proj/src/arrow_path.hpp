#pragma once

#include <initializer_list>

#include "stackt/groupoid.hpp"

namespace stackt::detail {

/// Composes arrows in diagrammatic order: follow(m, {f, g, h}) = h . g . f.
/// Returns kNone when any arrow is kNone or two neighbours do not compose,
/// so validators can evaluate identities on corrupted data without UB.
inline ArrowId follow(const FiniteGroupoid& m, std::initializer_list<ArrowId> arrows) {
  ArrowId acc = kNone;
  bool first = true;
  for (auto f : arrows) {
    if (f == kNone || f >= m.num_arrows()) return kNone;
    if (first) {
      acc = f;
      first = false;
      continue;
    }
    if (m.target(acc) != m.source(f)) return kNone;
    acc = m.compose(f, acc);
  }
  return acc;
}

inline ArrowId inverse_or_none(const FiniteGroupoid& m, ArrowId f) {
  if (f == kNone || f >= m.num_arrows() || !m.has_inverse(f)) return kNone;
  return m.inverse(f);
}

inline bool has_ends(const FiniteGroupoid& m, ArrowId f, ObjectId s, ObjectId t) {
  return f != kNone && f < m.num_arrows() && m.source(f) == s && m.target(f) == t;
}

}  // namespace stackt::detail
