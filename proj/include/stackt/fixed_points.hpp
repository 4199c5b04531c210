#pragma once

#include <vector>

#include "stackt/action.hpp"

namespace stackt {

/// An object x with a linearization alpha_g : x -> g.x for every g,
/// satisfying alpha_{gh} = alpha_{g,h}^x . g.alpha_h . alpha_g.
/// For strict actions this is g.alpha_h . alpha_g = alpha_{gh}.
struct FixedObject {
  ObjectId x = 0;
  std::vector<ArrowId> lin;  // indexed by group element

  bool operator==(const FixedObject&) const = default;
};

/// The linearizations of x, in lexicographic order of `lin`. alpha_1 is
/// forced to (a^x)^-1; the remaining slots are searched depth first, with
/// every product of two assigned slots propagated before branching.
/// Throws std::out_of_range for an unknown object and BudgetExceeded when
/// the search uses more than `budget` nodes.
std::vector<FixedObject> enumerate_fixed_objects(const WeakAction& a, ObjectId x,
                                                 std::size_t budget = kDefaultBudget);

/// True when `lin` is a linearization of x. Does not require a valid action.
bool is_linearization(const WeakAction& a, ObjectId x, const std::vector<ArrowId>& lin);

struct FixedPointResult {
  ActionPtr input;
  /// Objects of M^G, ordered by (x, lin).
  std::vector<FixedObject> objects;
  /// Arrows (x, alpha) -> (y, beta) are arrows phi : x -> y of M with
  /// beta_g . phi = g.phi . alpha_g for all g.
  GroupoidPtr groupoid;
  /// The forgetful functor M^G -> M.
  GroupoidFunctor epsilon;
};

/// Throws InvalidInput if `a` does not validate, BudgetExceeded as above.
FixedPointResult fixed_point_groupoid(const ActionPtr& a, std::size_t budget = kDefaultBudget);

/// epsilon as a G-morphism from the trivial action on M^G to the input,
/// with sigma_g^{(x, alpha)} = alpha_g^-1 : g.x -> x.
GMorphism epsilon_g_morphism(const FixedPointResult& fp);

/// Decides whether `a` is G-isomorphic to the trivial action on its
/// fixed-point groupoid. epsilon is tried first; otherwise every
/// equivalence M^G -> M is searched for an equivariance family.
/// kIndeterminate if a budget runs out.
EquivarianceSearch is_essentially_trivial(const ActionPtr& a, std::size_t budget = kDefaultBudget);

/// Searches for a G-isomorphism from the trivial action on the same
/// groupoid to `a`.
EquivarianceSearch is_isomorphic_to_trivial(const ActionPtr& a,
                                            std::size_t budget = kDefaultBudget);

}  // namespace stackt
