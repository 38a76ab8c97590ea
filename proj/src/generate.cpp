// SPDX-License-Identifier: Apache-2.0
#include "relucert/generate.hpp"

#include <set>

#include "relucert/error.hpp"
#include "relucert/symmetry.hpp"

namespace relucert {

namespace {

Rational small_rational(SplitMix& rng, bool allow_zero) {
  static const long long dens[] = {1, 2, 3, 4};
  for (;;) {
    const long long num = rng.range(-8, 8);
    if (num == 0 && !allow_zero) continue;
    return Rational(num, dens[rng.below(4)]);
  }
}

}  // namespace

Network random_network(SplitMix& rng, const NetGenOptions& options) {
  std::vector<Layer> layers;
  int prev = options.input_dim;
  for (int width : options.hidden_widths) {
    Layer layer;
    std::set<std::pair<RatVec, Rational>> used;
    for (int i = 0; i < width; ++i) {
      for (;;) {
        RatVec row(prev);
        bool nonzero = false;
        for (Rational& w : row) {
          w = small_rational(rng, true);
          if (w != 0) nonzero = true;
        }
        if (!nonzero) continue;
        Rational bias = small_rational(rng, false);
        if (options.head_canonical && !used.insert({row, bias}).second) continue;
        layer.weights.push_back(std::move(row));
        layer.bias.push_back(std::move(bias));
        break;
      }
    }
    layers.push_back(std::move(layer));
    prev = width;
  }
  Layer output;
  for (int i = 0; i < options.output_dim; ++i) {
    RatVec row(prev);
    bool nonzero = false;
    for (Rational& w : row) {
      w = small_rational(rng, true);
      if (w != 0) nonzero = true;
    }
    if (!nonzero) row[rng.below(prev)] = 1;
    output.weights.push_back(std::move(row));
    output.bias.push_back(small_rational(rng, true));
  }
  layers.push_back(std::move(output));
  Network net(options.input_dim, std::move(layers));
  return options.head_canonical ? head_canonicalize(net) : net;
}

Box random_box(SplitMix& rng, int dim) {
  RatVec lo(dim), hi(dim);
  for (int j = 0; j < dim; ++j) {
    lo[j] = Rational(rng.range(-12, -2), 2);
    hi[j] = Rational(rng.range(2, 12), 2);
  }
  return make_box(std::move(lo), std::move(hi));
}

LinearSpec random_spec(SplitMix& rng, const Network& net, const Box& box) {
  LinearSpec spec;
  spec.c.resize(net.output_dim());
  bool nonzero = false;
  for (Rational& ci : spec.c) {
    ci = Rational(rng.range(-2, 2));
    if (ci != 0) nonzero = true;
  }
  if (!nonzero) spec.c[rng.below(spec.c.size())] = 1;
  RatVec center(net.input_dim());
  for (int j = 0; j < net.input_dim(); ++j) center[j] = (box.lower[j] + box.upper[j]) / 2;
  static const Rational offsets[] = {Rational(-2), Rational(-1), Rational(-1, 2), Rational(0),
                                     Rational(1, 2), Rational(1), Rational(2), Rational(4)};
  spec.b = dot(spec.c, forward(net, center)) + offsets[rng.below(8)];
  return spec;
}

Network sawtooth_network(int depth) {
  if (depth < 1) throw DimensionError("sawtooth_network: depth must be >= 1");
  // tent(u) = 2*ReLU(u) - 4*ReLU(u - 1/2), composed depth times
  std::vector<Layer> layers;
  Layer first;
  first.weights = {{Rational(1)}, {Rational(1)}};
  first.bias = {Rational(0), Rational(-1, 2)};
  layers.push_back(std::move(first));
  for (int l = 1; l < depth; ++l) {
    Layer layer;
    layer.weights = {{Rational(2), Rational(-4)}, {Rational(2), Rational(-4)}};
    layer.bias = {Rational(0), Rational(-1, 2)};
    layers.push_back(std::move(layer));
  }
  Layer output;
  output.weights = {{Rational(2), Rational(-4)}};
  output.bias = {Rational(0)};
  layers.push_back(std::move(output));
  return Network(1, std::move(layers));
}

}  // namespace relucert
