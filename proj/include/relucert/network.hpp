// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "relucert/rational.hpp"

namespace relucert {

struct Layer {
  RatMat weights;  // shape d_out x d_in
  RatVec bias;     // length d_out
};

// Feedforward ReLU network with exact rational parameters. ReLU on every hidden
// layer, identity on the output layer. Immutable after construction; all
// operations on it are pure.
class Network {
 public:
  Network(int input_dim, std::vector<Layer> layers);

  int input_dim() const { return input_dim_; }
  int output_dim() const { return static_cast<int>(layers_.back().bias.size()); }
  const std::vector<Layer>& layers() const { return layers_; }
  int hidden_layer_count() const { return static_cast<int>(layers_.size()) - 1; }
  std::vector<int> hidden_widths() const;
  int hidden_neuron_count() const;

  bool same_architecture(const Network& other) const;

 private:
  int input_dim_;
  std::vector<Layer> layers_;  // last layer is the affine output layer
};

struct HiddenTrace {
  std::vector<RatVec> activations;  // one post-ReLU vector per hidden layer
};

// One bit per hidden neuron, layer-major. true = pre-activation > 0 (exact zero
// counts as inactive).
struct ActivationPattern {
  std::vector<bool> bits;

  bool operator==(const ActivationPattern& other) const = default;
  bool operator<(const ActivationPattern& other) const { return bits < other.bits; }
};

struct AffineMap {
  RatMat linear;   // A
  RatVec constant; // c
};

// Pre-activation of one hidden neuron as an exact affine function of the input,
// valid on the region selected by a fixed activation pattern.
struct NeuronForm {
  RatVec coeff;
  Rational constant;

  bool is_constant() const;
};

RatVec forward(const Network& net, const RatVec& x);
HiddenTrace hidden_trace(const Network& net, const RatVec& x);
ActivationPattern activation_pattern(const Network& net, const RatVec& x);

/// Exact affine restriction f(x) = A x + c valid wherever the pattern holds.
/// Defined for every pattern, feasible or not.
AffineMap affine_map_for_pattern(const Network& net, const ActivationPattern& p);

/// Pre-activation affine forms of all hidden neurons (layer-major) under a fixed
/// pattern. The backbone of region constraint systems.
std::vector<NeuronForm> pre_activation_forms(const Network& net, const ActivationPattern& p);

/// True when pre-activations of every hidden neuron at x are nonzero (the
/// checkable form of "generic input").
bool all_preactivations_nonzero(const Network& net, const RatVec& x);

}  // namespace relucert
