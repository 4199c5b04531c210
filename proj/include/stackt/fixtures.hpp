#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stackt/action.hpp"

namespace stackt::fixtures {

struct NamedAction {
  std::string name;
  ActionPtr action;
};

/// Q/Z(Q) acting on b0(Q) by conjugation, through Q/Z -> Inn(Q). Strict.
WeakAction quaternion_twist();

/// The same conjugation written with chosen lifts r_g and the extension
/// cocycle as coherence data. Not strict.
WeakAction quaternion_lifted_twist();

/// Strict action on pair_groupoid(n): permutations[g][x] = g.x, with the
/// unique arrow x -> y sent to the unique arrow g.x -> g.y.
WeakAction pair_gset_action(GroupPtr group, const std::vector<std::vector<ObjectId>>& permutations);

/// Twist of b0(h) through a homomorphism g -> Aut(h).
WeakAction twist_through(const GroupPtr& g, const GroupPtr& h, std::mt19937& rng);

/// One transport component j_g^x : g.x -> y per (g, x), chosen uniformly
/// among the arrows out of g.x.
std::vector<ArrowId> random_pointwise_transport(const WeakAction& a, std::mt19937& rng);

/// Small strict actions used across the test suites.
std::vector<NamedAction> catalogue();

/// Weak actions built by transporting strict product actions along random
/// isomorphism families. Groups have order at most 8, groupoids at most 6
/// objects, and sizes are kept small enough for exhaustive validation.
/// Deterministic for a given seed.
std::vector<NamedAction> weak_corpus(std::uint32_t seed, std::size_t count);

/// Groups of order at most 8 used by the corpus, with display names.
std::vector<std::pair<std::string, GroupPtr>> small_groups();

}  // namespace stackt::fixtures
