#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "stackt/group.hpp"
#include "stackt/report.hpp"

namespace stackt {

struct ArrowEnds {
  ObjectId source;
  ObjectId target;

  bool operator==(const ArrowEnds&) const = default;
};

/// One entry of a composition table: `second ∘ first == result`, where
/// target(first) == source(second).
struct CompositionEntry {
  ArrowId first;
  ArrowId second;
  ArrowId result;

  bool operator==(const CompositionEntry&) const = default;
};

/// A finite groupoid with dense integer objects and arrows.
///
/// The composition table is stored sparsely over composable pairs only. The
/// constructor rejects structurally unusable tables with MalformedError
/// (indices out of range, composable pairs missing or repeated, entries for
/// non-composable pairs). Everything else, including composites of the wrong
/// type, is left for validate_groupoid() to report.
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;  // the empty groupoid

  FiniteGroupoid(std::size_t num_objects, std::vector<ArrowEnds> arrows,
                 std::vector<ArrowId> identities,
                 const std::vector<CompositionEntry>& composition);

  /// Builds the table by calling `compose(first, second)` on every
  /// composable pair.
  static FiniteGroupoid build(
      std::size_t num_objects, std::vector<ArrowEnds> arrows,
      std::vector<ArrowId> identities,
      const std::function<ArrowId(ArrowId first, ArrowId second)>& compose);

  std::size_t num_objects() const { return num_objects_; }
  std::size_t num_arrows() const { return arrows_.size(); }
  const std::vector<ArrowEnds>& arrows() const { return arrows_; }
  const std::vector<ArrowId>& identities() const { return identities_; }

  ObjectId source(ArrowId f) const { return arrows_[f].source; }
  ObjectId target(ArrowId f) const { return arrows_[f].target; }
  ArrowId identity(ObjectId x) const { return identities_[x]; }
  bool is_identity(ArrowId f) const { return identities_[source(f)] == f; }

  /// `second ∘ first`. Requires target(first) == source(second).
  ArrowId compose(ArrowId second, ArrowId first) const {
    return comp_[comp_offset_[first] + out_pos_[second]];
  }
  /// Throws std::domain_error if `f` has no two-sided inverse.
  ArrowId inverse(ArrowId f) const;
  bool has_inverse(ArrowId f) const { return inverse_[f] != kNone; }

  /// Arrows x -> y in increasing id order.
  std::span<const ArrowId> hom(ObjectId x, ObjectId y) const;
  /// Arrows out of x ordered by (target, id).
  std::span<const ArrowId> out_arrows(ObjectId x) const {
    return {out_arrows_.data() + out_begin_[x], out_begin_[x + 1] - out_begin_[x]};
  }
  /// Position of f in out_arrows(source(f)).
  std::size_t out_position(ArrowId f) const { return out_pos_[f]; }

  /// Every composable pair in (first, second) order.
  std::vector<CompositionEntry> composition_entries() const;

  bool operator==(const FiniteGroupoid& other) const {
    return num_objects_ == other.num_objects_ && arrows_ == other.arrows_ &&
           identities_ == other.identities_ && comp_ == other.comp_;
  }

 private:
  void index_arrows();
  void compute_inverses();

  std::size_t num_objects_ = 0;
  std::vector<ArrowEnds> arrows_;
  std::vector<ArrowId> identities_;
  std::vector<ArrowId> out_arrows_;
  std::vector<std::size_t> out_begin_{0};
  std::vector<std::uint32_t> out_pos_;
  std::vector<std::size_t> comp_offset_;
  std::vector<ArrowId> comp_;
  std::vector<ArrowId> inverse_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

inline GroupoidPtr share(FiniteGroupoid g) {
  return std::make_shared<const FiniteGroupoid>(std::move(g));
}

/// The arrows x -> y as a set. Throws std::out_of_range for an unknown
/// object.
std::vector<ArrowId> isom_set(const FiniteGroupoid& g, ObjectId x, ObjectId y);

/// Same groupoid: identical pointer or equal tables.
bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b);

ValidationReport validate_groupoid(const FiniteGroupoid& g);

struct GroupoidFunctor {
  GroupoidPtr source;
  GroupoidPtr target;
  std::vector<ObjectId> object_map;
  std::vector<ArrowId> arrow_map;

  ObjectId on_object(ObjectId x) const { return object_map[x]; }
  ArrowId on_arrow(ArrowId f) const { return arrow_map[f]; }

  bool operator==(const GroupoidFunctor& other) const {
    return same_groupoid(source, other.source) && same_groupoid(target, other.target) &&
           object_map == other.object_map && arrow_map == other.arrow_map;
  }
};

GroupoidFunctor identity_functor(const GroupoidPtr& g);
/// `second ∘ first`.
GroupoidFunctor compose_functors(const GroupoidFunctor& second, const GroupoidFunctor& first);
GroupoidFunctor constant_functor(const GroupoidPtr& source, const GroupoidPtr& target,
                                 ObjectId value);

/// Throws MalformedError on map-size or range errors.
ValidationReport validate_functor(const GroupoidFunctor& f);

/// components[x] : from(x) -> to(x).
struct NaturalIso {
  GroupoidFunctor from;
  GroupoidFunctor to;
  std::vector<ArrowId> components;
};

NaturalIso identity_transformation(const GroupoidFunctor& f);

/// Throws MalformedError on component count mismatch or functors that do
/// not share source and target.
ValidationReport validate_nat_iso(const NaturalIso& n);

FiniteGroupoid discrete_groupoid(std::size_t num_objects);
/// n objects with exactly one arrow between any two.
FiniteGroupoid pair_groupoid(std::size_t num_objects);
/// Objects and arrows of a x b are ordered lexicographically: (i, j) has index
/// i * |b| + j.
FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b);
/// new id = perm[old id].
FiniteGroupoid relabel(const FiniteGroupoid& g, const std::vector<ObjectId>& object_perm,
                       const std::vector<ArrowId>& arrow_perm);

/// Automorphism group of x as a FiniteGroup. `arrows[i]` is the arrow for
/// group element i; element 0 is the identity arrow.
struct AutomorphismGroupOf {
  GroupPtr group;
  std::vector<ArrowId> arrows;
};
AutomorphismGroupOf automorphisms_of(const FiniteGroupoid& g, ObjectId x);

/// Connected-component label (smallest object in the component) per object.
std::vector<ObjectId> component_representatives(const FiniteGroupoid& g);

struct Skeleton {
  GroupoidPtr groupoid;
  /// Skeleton object i corresponds to original object representatives[i].
  std::vector<ObjectId> representatives;
  /// Skeleton object of each original object.
  std::vector<ObjectId> class_of;
  /// Chosen arrow x -> representative of x, per original object.
  std::vector<ArrowId> to_representative;
  GroupoidFunctor collapse;  // original -> skeleton
  GroupoidFunctor include;   // skeleton -> original
};

/// Requires a valid groupoid.
Skeleton skeletonize(const GroupoidPtr& g);

bool is_faithful(const GroupoidFunctor& f);
bool is_fully_faithful(const GroupoidFunctor& f);
bool is_essentially_surjective(const GroupoidFunctor& f);
bool is_equivalence(const GroupoidFunctor& f);

/// A natural isomorphism f => g when one exists; the first in canonical order.
std::optional<NaturalIso> find_natural_iso(const GroupoidFunctor& f, const GroupoidFunctor& g);

inline constexpr std::size_t kDefaultBudget = 1'000'000;

struct EquivalenceResult {
  Verdict verdict = Verdict::kIndeterminate;
  std::optional<GroupoidFunctor> witness;
};

/// Decides whether a and b are equivalent. The witness is the canonical
/// minimum functor a -> b. Exceeding `budget` search nodes yields
/// kIndeterminate, never kFalse.
EquivalenceResult check_equivalence(const GroupoidPtr& a, const GroupoidPtr& b,
                                    std::size_t budget = kDefaultBudget);

/// Visits every equivalence a -> b that factors as collapse, an isomorphism
/// of skeletons, then inclusion. Every equivalence a -> b is naturally
/// isomorphic to exactly one visited functor up to inner automorphisms of
/// the target's automorphism groups. `visit` returns false to stop.
/// Returns kIndeterminate if the budget ran out before the search finished.
Verdict for_each_equivalence(const GroupoidPtr& a, const GroupoidPtr& b, std::size_t budget,
                             const std::function<bool(const GroupoidFunctor&)>& visit);

}  // namespace stackt
