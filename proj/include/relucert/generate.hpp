// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "relucert/prng.hpp"
#include "relucert/region.hpp"
#include "relucert/verify.hpp"

namespace relucert {

struct NetGenOptions {
  int input_dim = 1;
  std::vector<int> hidden_widths = {2};
  int output_dim = 1;
  // permute each hidden layer so its lexicographically greatest (row, bias)
  // tuple sits at neuron 0, and keep rows distinct
  bool head_canonical = false;
};

/// Random network with small nonzero rational weights and nonzero hidden
/// biases (keeps pre-activations away from identically-zero degeneracies).
Network random_network(SplitMix& rng, const NetGenOptions& options);

Box random_box(SplitMix& rng, int dim);

/// Random spec anchored at the box center output so verdicts mix between
/// Certified and Violated across instances.
LinearSpec random_spec(SplitMix& rng, const Network& net, const Box& box);

/// Depth-L tent-map composition: width-2 hidden layers, 2^L linear regions on
/// [0,1]. The explicit exponential-region family used by the scaling track.
Network sawtooth_network(int depth);

}  // namespace relucert
