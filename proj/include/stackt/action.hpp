#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "stackt/group.hpp"
#include "stackt/groupoid.hpp"
#include "stackt/report.hpp"

namespace stackt {

/// A weak action of a finite group G on a finite groupoid M: one endofunctor
/// mu_g per element, coherence isomorphisms alpha_{g,h}^x : g.(h.x) -> (gh).x
/// and unit isomorphisms a^x : 1.x -> x, all fully materialized.
///
/// The constructor checks shapes only (family sizes, index ranges);
/// validate_action() checks the axioms.
class WeakAction {
 public:
  WeakAction(GroupPtr group, GroupoidPtr space, std::vector<GroupoidFunctor> mu,
             std::vector<std::vector<ArrowId>> alpha, std::vector<ArrowId> unit);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const FiniteGroupoid& space() const { return *space_; }
  const GroupoidPtr& space_ptr() const { return space_; }
  std::size_t group_order() const { return group_->order(); }
  std::size_t num_objects() const { return space_->num_objects(); }

  const GroupoidFunctor& mu(Element g) const { return mu_[g]; }
  ObjectId act(Element g, ObjectId x) const { return mu_[g].object_map[x]; }
  ArrowId act_arrow(Element g, ArrowId f) const { return mu_[g].arrow_map[f]; }
  /// alpha_{g,h}^x : g.(h.x) -> (gh).x
  ArrowId alpha(Element g, Element h, ObjectId x) const {
    return alpha_[g * group_->order() + h][x];
  }
  /// a^x : 1.x -> x
  ArrowId unit(ObjectId x) const { return unit_[x]; }

  const std::vector<std::vector<ArrowId>>& alpha_table() const { return alpha_; }
  const std::vector<ArrowId>& unit_table() const { return unit_; }

  /// alpha_{g,h} as a natural isomorphism mu_g . mu_h => mu_{gh}.
  NaturalIso alpha_iso(Element g, Element h) const;
  /// The unit as a natural isomorphism mu_1 => Id.
  NaturalIso unit_iso() const;

  /// All alpha and unit components are identity arrows.
  bool is_strict() const;

  bool operator==(const WeakAction& other) const;

 private:
  GroupPtr group_;
  GroupoidPtr space_;
  std::vector<GroupoidFunctor> mu_;
  std::vector<std::vector<ArrowId>> alpha_;
  std::vector<ArrowId> unit_;
};

using ActionPtr = std::shared_ptr<const WeakAction>;

inline ActionPtr share(WeakAction a) { return std::make_shared<const WeakAction>(std::move(a)); }

bool same_action(const ActionPtr& a, const ActionPtr& b);

/// Exhaustive: functoriality of every mu_g, typing and naturality of every
/// alpha_{g,h} and of the unit, the coherence identity at every (g,h,k,x) and
/// the unit identity 1.a^x = alpha_{1,1}^x at every x.
ValidationReport validate_action(const WeakAction& a);

/// Strict action with the given endofunctors (identity alpha and unit).
WeakAction strict_action(GroupPtr group, GroupoidPtr space, std::vector<GroupoidFunctor> mu);
WeakAction trivial_action(GroupPtr group, GroupoidPtr space);

/// One object; arrows are the group elements (arrow id = element index);
/// composition is the group law, g . h = g*h.
FiniteGroupoid b0_groupoid(const FiniteGroup& g);

/// Strict action of `twist.acting` on b0(twist.on): the object is fixed and an
/// arrow q is sent to theta(q). Throws std::invalid_argument if the family is
/// not an action by automorphisms.
WeakAction twist_action(const AutomorphismAction& twist);

/// Q/Z acting on b0(Q) by conjugation with the lifts r_g (least member of
/// each coset): mu_g conjugates by r_g, alpha_{g,h} is the central element
/// r_g r_h r_{gh}^-1 and the unit is the identity. Throws
/// std::invalid_argument if Z is not a central subgroup.
WeakAction lifted_conjugation_action(const GroupPtr& q, std::vector<Element> central_subgroup);

/// Strict action on discrete(n): permutations[g][x] = g.x. Throws
/// std::invalid_argument if the permutations do not form a group action.
WeakAction action_from_gset(GroupPtr group, const std::vector<std::vector<ObjectId>>& permutations);

/// Left translation of G on discrete(|G|).
WeakAction left_translation_action(GroupPtr group);

/// Componentwise action on a x b (same group); layout as in product_groupoid.
WeakAction product_action(const WeakAction& a, const WeakAction& b);

/// Transport of structure along isomorphisms j_g^x : g.x -> y_{g,x}, given as
/// one arrow per (g, x) at index g * |Ob| + x. The result acts by
/// g * x = y_{g,x}; (Id, j) is a G-isomorphism from the result to `a`.
/// Throws MalformedError for mistyped or non-invertible components.
WeakAction transport_action_pointwise(const WeakAction& a, const std::vector<ArrowId>& j);

/// Transport along one isomorphism j^x : x -> r(x) per object, applied after
/// the action: g * x = r(g.x). This is the pointwise form with
/// j_g^x = j^{g.x}.
WeakAction transport_action(const WeakAction& a, const std::vector<ArrowId>& j);

/// The lax presheaf over B0(G) attached to an action: F_g = mu_{g^-1} and
/// comparison isomorphisms c_{g,h} : F_g . F_h => F_{hg} given by
/// alpha_{g^-1,h^-1}; the unit F_e => Id is the action's unit.
struct LaxPresheaf {
  GroupPtr group;
  GroupoidPtr space;
  std::vector<GroupoidFunctor> functors;
  std::vector<std::vector<ArrowId>> comparisons;  // index g * |G| + h
  std::vector<ArrowId> unit;

  ArrowId comparison(Element g, Element h, ObjectId x) const {
    return comparisons[g * group->order() + h][x];
  }
};

LaxPresheaf to_lax_presheaf(const WeakAction& a);
/// Inverse translation: mu_g = F_{g^-1}, alpha_{g,h} = c_{g^-1,h^-1}.
WeakAction from_lax_presheaf(const LaxPresheaf& p);
/// Typing and naturality of the comparisons and the lax associativity
/// identity c_{g,kh} . F_g(c_{h,k}) = c_{hg,k} . c_{g,h}^{F_k x}.
ValidationReport validate_lax_presheaf(const LaxPresheaf& p);

/// A morphism of G-groupoids (f, sigma) with sigma_g^x : g.f(x) -> f(g.x).
struct GMorphism {
  ActionPtr source;
  ActionPtr target;
  GroupoidFunctor functor;
  std::vector<ArrowId> sigma;  // index g * |Ob(source)| + x

  ArrowId sigma_at(Element g, ObjectId x) const {
    return sigma[g * source->num_objects() + x];
  }
};

/// Checks naturality of every sigma_g, the weak compatibility
/// f(alpha_{g,h}^x) . sigma_g^{h.x} . g.sigma_h^x = sigma_{gh}^x . beta_{g,h}^{f(x)}
/// and the unit compatibility f(a^x) . sigma_1^x = b^{f(x)}.
ValidationReport validate_g_morphism(const GMorphism& m);

GMorphism identity_g_morphism(const ActionPtr& a);
/// `second ∘ first`: functor f2 . f1 and sigma_3 = f2(sigma_1) . sigma_2^{f1(x)}.
GMorphism compose_g_morphisms(const GMorphism& first, const GMorphism& second);
bool is_g_isomorphism(const GMorphism& m);

/// A 2-morphism tau : f1 => f2 between G-morphisms with the same endpoints.
struct G2Morphism {
  GMorphism source;
  GMorphism target;
  std::vector<ArrowId> tau;
};

/// Naturality of tau and sigma_{2,g}^x . g.tau^x = tau^{g.x} . sigma_{1,g}^x.
ValidationReport validate_2g_morphism(const G2Morphism& t);
G2Morphism identity_2g_morphism(const GMorphism& m);

struct EquivarianceSearch {
  Verdict verdict = Verdict::kIndeterminate;
  std::optional<GMorphism> witness;
};

/// Searches for sigma making (f, sigma) a G-morphism source -> target.
/// sigma_1 is pinned by the unit constraint, naturality and the
/// compatibility identity propagate forced components, and the remaining
/// choices are explored in canonical order.
EquivarianceSearch find_equivariance(const ActionPtr& source, const ActionPtr& target,
                                     const GroupoidFunctor& f,
                                     std::size_t budget = kDefaultBudget);

/// Two actions on the same groupoid are equivalent when (Id, sigma) is a
/// G-morphism a -> b for some sigma.
EquivarianceSearch actions_equivalent(const ActionPtr& a, const ActionPtr& b,
                                      std::size_t budget = kDefaultBudget);

/// Searches for a G-isomorphism a -> b: an equivalence of the underlying
/// groupoids (one per natural-isomorphism class) together with sigma.
EquivarianceSearch find_g_isomorphism(const ActionPtr& a, const ActionPtr& b,
                                      std::size_t budget = kDefaultBudget);

}  // namespace stackt
