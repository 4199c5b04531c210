#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "stackt/report.hpp"

namespace stackt {

/// A finite group given by its multiplication table. Element 0 is the
/// identity. The constructor only checks the table's shape; use
/// validate_group() for the group axioms.
class FiniteGroup {
 public:
  FiniteGroup();  // trivial group
  explicit FiniteGroup(const std::vector<std::vector<Element>>& table);

  std::size_t order() const { return order_; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  /// kNone when `a` has no two-sided inverse (only possible for invalid tables).
  Element inverse(Element a) const { return inverse_[a]; }
  static constexpr Element identity() { return 0; }

  std::vector<std::vector<Element>> table() const;

  bool operator==(const FiniteGroup& other) const {
    return order_ == other.order_ && table_ == other.table_;
  }

 private:
  std::size_t order_ = 1;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

template <typename... Args>
GroupPtr make_group(Args&&... args) {
  return std::make_shared<const FiniteGroup>(std::forward<Args>(args)...);
}

ValidationReport validate_group(const FiniteGroup& g);

struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<Element> map;

  Element operator()(Element a) const { return map[a]; }
  bool is_injective() const;
  bool is_surjective() const;
};

ValidationReport validate_hom(const GroupHom& f);

FiniteGroup trivial_group();
FiniteGroup cyclic(std::size_t n);
/// Elements of a x b are ordered lexicographically: (i, j) has index i*|b| + j.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Elements in order: 1, -1, i, -i, j, -j, k, -k.
FiniteGroup quaternion_group();
/// Permutations of {0..n-1} in lexicographic order (identity first);
/// product is composition, (p*q)(i) = p(q(i)).
FiniteGroup symmetric_group(std::size_t n);

std::size_t element_order(const FiniteGroup& g, Element a);
std::vector<Element> center(const FiniteGroup& g);
bool is_abelian(const FiniteGroup& g);
bool is_subgroup(const FiniteGroup& g, const std::vector<Element>& subset);
bool is_normal_subgroup(const FiniteGroup& g, const std::vector<Element>& subset);
std::vector<Element> generated_subgroup(const FiniteGroup& g,
                                        const std::vector<Element>& gens);
/// A small generating set, chosen greedily and deterministically.
std::vector<Element> generators(const FiniteGroup& g);

struct QuotientResult {
  GroupPtr group;
  GroupHom projection;
  /// Left cosets in the order of their least member; cosets[0] is the subgroup.
  std::vector<std::vector<Element>> cosets;
};

/// Throws std::invalid_argument if `subgroup` is not a normal subgroup.
QuotientResult quotient_group(const GroupPtr& g, std::vector<Element> subgroup);

/// An action of `acting` on the group `on` by automorphisms:
/// automorphisms[a] is the permutation of `on`'s elements by which a acts.
struct AutomorphismAction {
  GroupPtr acting;
  GroupPtr on;
  std::vector<std::vector<Element>> automorphisms;

  bool is_faithful() const;
};

/// Checks that every image is an automorphism and that a -> automorphisms[a]
/// is a homomorphism.
ValidationReport validate_automorphism_action(const AutomorphismAction& a);

/// Aut(g) with its evaluation action on g. Automorphisms are ordered
/// lexicographically by their image vectors, so element 0 is the identity.
AutomorphismAction automorphism_group(const GroupPtr& g);

/// All homomorphisms g -> h, ordered lexicographically by image vector.
std::vector<GroupHom> enumerate_homs(const GroupPtr& g, const GroupPtr& h);

/// Calls `visit` for every isomorphism a -> b (as an image vector) in
/// lexicographic order until it returns false. Returns the number of
/// search nodes used; stops early and returns kNone if `budget` is exceeded.
std::size_t for_each_isomorphism(
    const FiniteGroup& a, const FiniteGroup& b, std::size_t budget,
    const std::function<bool(const std::vector<Element>&)>& visit);

std::optional<std::vector<Element>> find_isomorphism(const FiniteGroup& a,
                                                     const FiniteGroup& b);

/// The action of Q/Z on Q by conjugation, for Z central in Q. The coset of r
/// acts by q -> r q r^-1. Throws std::invalid_argument if Z is not a central
/// subgroup.
AutomorphismAction conjugation_action(const GroupPtr& q,
                                      std::vector<Element> central_subgroup);

}  // namespace stackt
