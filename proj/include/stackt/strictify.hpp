#pragma once

#include <utility>
#include <vector>

#include "stackt/action.hpp"

namespace stackt {

/// An arrow (g,x) -> (h,y) of the strictified groupoid, represented by an
/// arrow x -> (g^-1 h).y of the original groupoid.
struct StrictArrow {
  ObjectId source;
  ObjectId target;
  ArrowId underlying;

  bool operator==(const StrictArrow&) const = default;
};

/// A weak action replaced by a strict one on the groupoid of pairs (g, x),
/// together with the G-morphism u back to the input.
///
/// Object (g, x) has index g * |Ob(M)| + x. Composition of
/// phi : (g,x) -> (h,y) and psi : (h,y) -> (k,z) is
/// alpha_{g^-1 h, h^-1 k}^z . (g^-1 h).psi . phi, and the identity of (g,x) is
/// (a^x)^-1 : x -> 1.x. The element c acts by (g,x) -> (cg, x) and keeps the
/// underlying arrow. u sends (g,x) to g.x and phi to alpha_{g,g^-1 h}^y . g.phi,
/// with sigma_c^{(g,x)} = alpha_{c,g}^x.
struct StrictificationResult {
  ActionPtr input;
  GroupoidPtr strict_space;
  ActionPtr strict_action;
  GMorphism u;
  std::vector<StrictArrow> arrows;

  ObjectId object_of(Element g, ObjectId x) const {
    return static_cast<ObjectId>(g * input->num_objects() + x);
  }
  std::pair<Element, ObjectId> pair_of(ObjectId o) const {
    const auto n = input->num_objects();
    return {static_cast<Element>(o / n), static_cast<ObjectId>(o % n)};
  }
  /// The arrow with the given endpoints and representative; kNone if the
  /// representative does not have the required type.
  ArrowId arrow_of(ObjectId source, ObjectId target, ArrowId underlying) const;

  std::vector<std::size_t> block_offset;  // per (source, target) pair
};

/// Throws InvalidInput if `a` does not validate.
StrictificationResult strictify(const ActionPtr& a);

/// The strict G-morphism induced by (f, sigma) : a -> b between the
/// strictifications: (g,x) -> (g, f(x)) on objects and
/// phi -> (sigma_{g^-1 h}^y)^-1 . f(phi) on arrows, with identity sigma.
GMorphism induced_strict_morphism(const StrictificationResult& sa, const StrictificationResult& sb,
                                  const GMorphism& m);

/// The 2-morphism u_b . f^str => f . u_a with components
/// tau^{(g,x)} = sigma_g^x.
G2Morphism strictification_square(const StrictificationResult& sa,
                                  const StrictificationResult& sb, const GMorphism& m,
                                  const GMorphism& f_str);

}  // namespace stackt
