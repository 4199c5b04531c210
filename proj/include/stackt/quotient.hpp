#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stackt/action.hpp"

namespace stackt {

/// An arrow x -> y of M/G: a pair (g, phi) with phi : g.x -> y in M.
struct QuotientArrow {
  Element g;
  ArrowId phi;

  bool operator==(const QuotientArrow&) const = default;
};

/// M/G: the objects of M, arrows (g, phi), composition
/// (h, psi) . (g, phi) = (hg, psi . h.phi . (alpha_{h,g}^x)^-1) and identity
/// (1, a^x). Arrows are ordered by source, then g, then phi.
struct QuotientGroupoid {
  ActionPtr input;
  GroupoidPtr space;
  /// M -> M/G, phi |-> (1, phi . a^x).
  GroupoidFunctor pi;
  std::vector<QuotientArrow> arrows;

  /// kNone when phi does not start at g.x.
  ArrowId arrow_of(ObjectId x, Element g, ArrowId phi) const;

  std::vector<std::size_t> block_offset;  // per (x, g)
};

/// Throws InvalidInput if `a` does not validate.
QuotientGroupoid quotient_groupoid(const ActionPtr& a);

/// Checks q against its action: the groupoid axioms, functoriality of pi,
/// the composition law recomputed entry by entry, and that the canonical
/// arrows c_g^x = (g^-1, a^x . alpha_{g^-1,g}^x) : g.x -> x are inverse to
/// (g, id_{g.x}) and make (pi, (g, id)) a G-morphism into the trivial
/// action on M/G.
ValidationReport pi_equivariance_check(const ActionPtr& a, const QuotientGroupoid& q);

/// An equivariant map from the left-translation torsor G to M, determined
/// by x = f(1) and sigma_g^1 : g.x -> f(g) for every g, with
/// sigma_1^1 = a^x. The other components are
/// sigma_g^h = sigma_{gh}^1 . alpha_{g,h}^x . (g.sigma_h^1)^-1.
struct TorsorObject {
  ObjectId x = 0;
  std::vector<ArrowId> sigma;  // sigma_g^1, indexed by g

  bool operator==(const TorsorObject&) const = default;
};

/// A morphism (u, alpha) with u(e) = e c and alpha_e : f(e) -> f'(e c).
/// alpha_1 determines the rest:
/// alpha_g = sigma'_g^c . g.alpha_1 . (sigma_g^1)^-1.
struct TorsorMorphism {
  Element c = 0;
  ArrowId alpha1 = 0;

  bool operator==(const TorsorMorphism&) const = default;
};

struct TorsorQuotientResult;

/// The groupoid of G-torsors with an equivariant map to M, on the single
/// canonical carrier. Objects are enumerated lazily in mixed radix: x first,
/// then sigma_g^1 by position in out_arrows(g.x), with the largest g varying
/// fastest.
class TorsorQuotient {
 public:
  /// Throws InvalidInput if `a` does not validate.
  explicit TorsorQuotient(ActionPtr a);

  const WeakAction& action() const { return *a_; }
  const ActionPtr& action_ptr() const { return a_; }
  std::size_t num_objects() const { return total_; }
  TorsorObject object(std::size_t index) const;
  /// Throws std::invalid_argument if `o` is not a torsor object.
  std::size_t index_of(const TorsorObject& o) const;

  /// f(g).
  ObjectId value(const TorsorObject& o, Element g) const;
  /// sigma_g^h : g.f(h) -> f(gh).
  ArrowId sigma(const TorsorObject& o, Element g, Element h) const;
  /// alpha_e for a candidate morphism; kNone if ill-typed.
  ArrowId alpha(const TorsorObject& s, const TorsorObject& t, const TorsorMorphism& m,
                Element e) const;
  /// Typing of alpha_1 and sigma'_g^{ec} . g.alpha_e = alpha_{ge} . sigma_g^e
  /// for every g, e.
  bool is_morphism(const TorsorObject& s, const TorsorObject& t, const TorsorMorphism& m) const;
  /// All morphisms s -> t ordered by (c, alpha_1).
  std::vector<TorsorMorphism> hom(const TorsorObject& s, const TorsorObject& t) const;
  TorsorMorphism identity(const TorsorObject& s) const;
  /// `second . first` for first : s -> t and second : t -> r.
  TorsorMorphism compose(const TorsorObject& s, const TorsorObject& t, const TorsorObject& r,
                         const TorsorMorphism& first, const TorsorMorphism& second) const;

  /// The target of the morphism out of s given by c and a full family
  /// alpha_e : f(e) -> anything: f'(ec) = target(alpha_e) and
  /// sigma'_g^{ec} = alpha_{ge} . sigma_g^e . (g.alpha_e)^-1.
  TorsorObject transport(const TorsorObject& s, Element c,
                         const std::vector<ArrowId>& alpha) const;

  /// The whole groupoid. Arrows out of s are exactly the transports of s
  /// along every c and every family alpha, ordered by (source, target, c,
  /// alpha_1). Throws BudgetExceeded if the composition table would have
  /// more than `max_table` entries.
  TorsorQuotientResult materialize(std::size_t max_table) const;

  /// The equivariant map as a G-morphism torsor -> action, where `torsor`
  /// is left_translation_action(G).
  GMorphism as_g_morphism(const TorsorObject& o, const ActionPtr& torsor) const;

 private:
  ActionPtr a_;
  std::vector<std::size_t> offset_;  // per x, plus the total
  std::size_t total_ = 0;
};

struct TorsorQuotientResult {
  GroupoidPtr space;
  std::vector<TorsorObject> objects;
  std::vector<TorsorMorphism> arrows;
  std::vector<std::size_t> source_offset;

  /// kNone if there is no such arrow.
  ArrowId arrow_of(ObjectId s, ObjectId t, const TorsorMorphism& m) const;
};

/// Materialized torsor quotient; throws InvalidInput or BudgetExceeded.
TorsorQuotientResult torsor_quotient_groupoid(const ActionPtr& a,
                                              std::size_t max_table = 4'000'000);

struct QuotientComparison {
  Verdict verdict = Verdict::kIndeterminate;
  /// Description of the first failed check, empty on success.
  std::string failure;
  std::size_t torsor_objects = 0;
  /// u' : M/G -> torsors, on the materialized torsor groupoid when it was
  /// small enough to build.
  std::optional<GroupoidFunctor> witness;
};

/// Builds u' : M/G -> torsors, x |-> (1.x, sigma_g^1 = alpha_{g,1}^x),
/// (g, phi) |-> (g^-1, g^-1.phi . (alpha_{g^-1,g}^x)^-1), and checks that
/// it is a functor, fully faithful and essentially surjective. Objects of
/// the torsor side are visited lazily; more than `budget` of them gives
/// kIndeterminate. When its composition table has at most
/// `materialize_limit` entries the torsor groupoid is also built and
/// check_equivalence is run on it.
QuotientComparison compare_quotients(const ActionPtr& a, std::size_t budget = kDefaultBudget,
                                     std::size_t materialize_limit = 200'000);

}  // namespace stackt
