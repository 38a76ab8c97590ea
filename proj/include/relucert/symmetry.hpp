// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "relucert/network.hpp"

namespace relucert {

// Function-preserving parameter transformations: hidden-neuron permutations and
// positive per-neuron scalings (ReLU positive homogeneity). Both alter the
// internal representation while leaving every output unchanged.
struct Permutation {
  int layer = 0;            // hidden layer index
  std::vector<int> pi;      // new_neuron[i] = old_neuron[pi[i]]
};

struct Scaling {
  int layer = 0;
  int neuron = 0;
  Rational alpha;  // > 0
};

using SymmetryTransform = std::variant<Permutation, Scaling>;

Network apply_transform(const Network& net, const SymmetryTransform& t);

struct SymmetricPartner {
  Network network;
  std::vector<SymmetryTransform> transforms;
  RatVec probe;  // generic point where the hidden traces provably differ
};

/// Deterministic (per seed) composition of at least one non-identity transform.
/// Always includes a permutation displacing neuron 0 on some width>=2 layer, so
/// the head-neuron objective below flips on head-canonical networks. Requires a
/// hidden layer of width >= 2.
SymmetricPartner random_symmetric_partner(const Network& net, std::uint64_t seed);

/// Sum over hidden layers of the L1 distance between trace entries; 0 iff the
/// traces coincide. Architectures must match.
Rational representation_distance(const Network& net1, const Network& net2, const RatVec& x);

/// Product of hidden-width factorials: a lower bound on the order of the
/// symmetry group.
BigInt group_order_lower_bound(const std::vector<int>& hidden_widths);

/// Deliberately representation-dependent alignment objective: 1 iff every
/// hidden layer carries its lexicographically greatest (row, bias) tuple at
/// neuron index 0. Not invariant under permutations, by design of the witness.
int synthetic_alignment_objective(const Network& net);

/// Permutes every hidden layer so that the lexicographically greatest
/// (row, bias) tuple sits at index 0 (a function-preserving transform); the
/// resulting network scores 1 under the synthetic objective.
Network head_canonicalize(const Network& net);

}  // namespace relucert
