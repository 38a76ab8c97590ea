// SPDX-License-Identifier: Apache-2.0
#include "relucert/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "relucert/error.hpp"
#include "relucert/prng.hpp"

namespace relucert {

namespace {

void check_hidden_layer(const Network& net, int layer) {
  if (layer < 0 || layer >= net.hidden_layer_count())
    throw DimensionError("transform: layer " + std::to_string(layer) + " is not a hidden layer");
}

// (row, bias) tuples ordered lexicographically, row first.
bool tuple_less(const RatVec& row_a, const Rational& bias_a, const RatVec& row_b,
                const Rational& bias_b) {
  for (std::size_t j = 0; j < row_a.size(); ++j) {
    if (row_a[j] != row_b[j]) return row_a[j] < row_b[j];
  }
  return bias_a < bias_b;
}

int argmax_tuple(const Layer& layer) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(layer.bias.size()); ++i)
    if (tuple_less(layer.weights[best], layer.bias[best], layer.weights[i], layer.bias[i]))
      best = i;
  return best;
}

}  // namespace

Network apply_transform(const Network& net, const SymmetryTransform& t) {
  std::vector<Layer> layers = net.layers();
  if (const auto* perm = std::get_if<Permutation>(&t)) {
    check_hidden_layer(net, perm->layer);
    Layer& here = layers[perm->layer];
    Layer& next = layers[perm->layer + 1];
    const std::size_t width = here.bias.size();
    if (perm->pi.size() != width) throw DimensionError("permutation size mismatch");
    std::vector<bool> seen(width, false);
    for (int v : perm->pi) {
      if (v < 0 || v >= static_cast<int>(width) || seen[v])
        throw DimensionError("invalid permutation");
      seen[v] = true;
    }
    Layer permuted = here;
    Layer rewired = next;
    for (std::size_t i = 0; i < width; ++i) {
      permuted.weights[i] = here.weights[perm->pi[i]];
      permuted.bias[i] = here.bias[perm->pi[i]];
      for (std::size_t r = 0; r < next.weights.size(); ++r)
        rewired.weights[r][i] = next.weights[r][perm->pi[i]];
    }
    layers[perm->layer] = std::move(permuted);
    layers[perm->layer + 1] = std::move(rewired);
  } else {
    const auto& scale = std::get<Scaling>(t);
    check_hidden_layer(net, scale.layer);
    if (scale.alpha <= 0) throw FormatError("scaling: alpha must be positive");
    Layer& here = layers[scale.layer];
    Layer& next = layers[scale.layer + 1];
    if (scale.neuron < 0 || scale.neuron >= static_cast<int>(here.bias.size()))
      throw DimensionError("scaling: invalid neuron index");
    for (Rational& w : here.weights[scale.neuron]) w *= scale.alpha;
    here.bias[scale.neuron] *= scale.alpha;
    for (std::size_t r = 0; r < next.weights.size(); ++r)
      next.weights[r][scale.neuron] /= scale.alpha;
  }
  return Network(net.input_dim(), std::move(layers));
}

SymmetricPartner random_symmetric_partner(const Network& net, std::uint64_t seed) {
  const std::vector<int> widths = net.hidden_widths();
  std::vector<int> wide_layers;
  for (int l = 0; l < static_cast<int>(widths.size()); ++l)
    if (widths[l] >= 2) wide_layers.push_back(l);
  if (wide_layers.empty())
    throw PreconditionError("random_symmetric_partner: no hidden layer of width >= 2");

  SplitMix rng(seed);
  static const Rational kScales[] = {Rational(1, 2), Rational(2), Rational(3),
                                     Rational(2, 3), Rational(5, 2)};
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<SymmetryTransform> transforms;
    for (int l : wide_layers) {
      const int width = widths[l];
      std::vector<int> pi(width);
      std::iota(pi.begin(), pi.end(), 0);
      // Fisher-Yates, then force index 0 to move so the head-neuron objective flips.
      for (int i = width - 1; i > 0; --i)
        std::swap(pi[i], pi[static_cast<int>(rng.below(i + 1))]);
      if (pi[0] == 0) std::swap(pi[0], pi[1 + static_cast<int>(rng.below(width - 1))]);
      transforms.push_back(Permutation{l, std::move(pi)});
    }
    const int scalings = 1 + static_cast<int>(rng.below(2));
    for (int s = 0; s < scalings; ++s) {
      const int l = static_cast<int>(rng.below(widths.size()));
      const int i = static_cast<int>(rng.below(widths[l]));
      transforms.push_back(Scaling{l, i, kScales[rng.below(5)]});
    }

    Network partner = net;
    for (const SymmetryTransform& t : transforms) partner = apply_transform(partner, t);

    // generic probe: all pre-activations nonzero on both nets, traces differ
    for (int tries = 0; tries < 100; ++tries) {
      RatVec probe(net.input_dim());
      for (Rational& c : probe) {
        const long long num = static_cast<long long>(rng.below(257)) - 128;
        c = Rational(num == 0 ? 1 : num, 16);
      }
      if (!all_preactivations_nonzero(net, probe)) continue;
      if (!all_preactivations_nonzero(partner, probe)) continue;
      if (representation_distance(net, partner, probe) > 0)
        return SymmetricPartner{std::move(partner), std::move(transforms), std::move(probe)};
    }
    // traces collided at every probe (vanishingly rare); redraw the transforms
  }
  throw PreconditionError("random_symmetric_partner: failed to find a separating probe");
}

Rational representation_distance(const Network& net1, const Network& net2, const RatVec& x) {
  if (!net1.same_architecture(net2))
    throw DimensionError("representation_distance: architecture mismatch");
  const HiddenTrace t1 = hidden_trace(net1, x);
  const HiddenTrace t2 = hidden_trace(net2, x);
  Rational total = 0;
  for (std::size_t l = 0; l < t1.activations.size(); ++l)
    for (std::size_t i = 0; i < t1.activations[l].size(); ++i) {
      Rational d = t1.activations[l][i] - t2.activations[l][i];
      total += d < 0 ? Rational(-d) : d;
    }
  return total;
}

BigInt group_order_lower_bound(const std::vector<int>& hidden_widths) {
  BigInt order = 1;
  for (int w : hidden_widths) {
    if (w < 1) throw DimensionError("group_order_lower_bound: widths must be >= 1");
    for (int k = 2; k <= w; ++k) order *= k;
  }
  return order;
}

int synthetic_alignment_objective(const Network& net) {
  if (net.hidden_layer_count() < 1)
    throw DimensionError("synthetic_alignment_objective: needs a hidden layer");
  for (int l = 0; l < net.hidden_layer_count(); ++l) {
    const Layer& layer = net.layers()[l];
    for (std::size_t i = 1; i < layer.bias.size(); ++i)
      if (tuple_less(layer.weights[0], layer.bias[0], layer.weights[i], layer.bias[i])) return 0;
  }
  return 1;
}

Network head_canonicalize(const Network& net) {
  Network result = net;
  for (int l = 0; l < net.hidden_layer_count(); ++l) {
    const int width = static_cast<int>(result.layers()[l].bias.size());
    if (width < 2) continue;
    const int best = argmax_tuple(result.layers()[l]);
    if (best == 0) continue;
    std::vector<int> pi(width);
    std::iota(pi.begin(), pi.end(), 0);
    std::swap(pi[0], pi[best]);
    result = apply_transform(result, Permutation{l, std::move(pi)});
  }
  return result;
}

}  // namespace relucert
