// SPDX-License-Identifier: Apache-2.0
#include "relucert/network.hpp"

#include <string>

#include "relucert/error.hpp"

namespace relucert {

Network::Network(int input_dim, std::vector<Layer> layers)
    : input_dim_(input_dim), layers_(std::move(layers)) {
  if (input_dim_ <= 0) throw DimensionError("network: input_dim must be positive");
  if (layers_.empty()) throw DimensionError("network: at least one layer required");
  std::size_t prev = static_cast<std::size_t>(input_dim_);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    if (layer.weights.empty() || layer.weights.size() != layer.bias.size())
      throw DimensionError("network: layer " + std::to_string(l) +
                           " weight/bias row count mismatch");
    for (const RatVec& row : layer.weights) {
      if (row.size() != prev)
        throw DimensionError("network: layer " + std::to_string(l) +
                             " expects input width " + std::to_string(prev));
    }
    prev = layer.weights.size();
  }
}

std::vector<int> Network::hidden_widths() const {
  std::vector<int> widths;
  for (int l = 0; l + 1 < static_cast<int>(layers_.size()); ++l)
    widths.push_back(static_cast<int>(layers_[l].bias.size()));
  return widths;
}

int Network::hidden_neuron_count() const {
  int n = 0;
  for (int w : hidden_widths()) n += w;
  return n;
}

bool Network::same_architecture(const Network& other) const {
  if (input_dim_ != other.input_dim_) return false;
  if (layers_.size() != other.layers_.size()) return false;
  for (std::size_t l = 0; l < layers_.size(); ++l)
    if (layers_[l].bias.size() != other.layers_[l].bias.size()) return false;
  return true;
}

namespace {

void check_input(const Network& net, const RatVec& x) {
  if (static_cast<int>(x.size()) != net.input_dim())
    throw DimensionError("input length " + std::to_string(x.size()) +
                         " does not match input_dim " + std::to_string(net.input_dim()));
}

RatVec relu(RatVec v) {
  for (Rational& r : v)
    if (r < 0) r = 0;
  return v;
}

}  // namespace

RatVec forward(const Network& net, const RatVec& x) {
  check_input(net, x);
  RatVec h = x;
  const auto& layers = net.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    RatVec z = vec_add(mat_vec(layers[l].weights, h), layers[l].bias);
    h = (l + 1 < layers.size()) ? relu(std::move(z)) : std::move(z);
  }
  return h;
}

HiddenTrace hidden_trace(const Network& net, const RatVec& x) {
  check_input(net, x);
  HiddenTrace trace;
  RatVec h = x;
  const auto& layers = net.layers();
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    h = relu(vec_add(mat_vec(layers[l].weights, h), layers[l].bias));
    trace.activations.push_back(h);
  }
  return trace;
}

ActivationPattern activation_pattern(const Network& net, const RatVec& x) {
  check_input(net, x);
  ActivationPattern p;
  RatVec h = x;
  const auto& layers = net.layers();
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    RatVec z = vec_add(mat_vec(layers[l].weights, h), layers[l].bias);
    for (const Rational& zi : z) p.bits.push_back(zi > 0);
    h = relu(std::move(z));
  }
  return p;
}

bool NeuronForm::is_constant() const {
  for (const Rational& c : coeff)
    if (c != 0) return false;
  return true;
}

std::vector<NeuronForm> pre_activation_forms(const Network& net, const ActivationPattern& p) {
  if (static_cast<int>(p.bits.size()) != net.hidden_neuron_count())
    throw DimensionError("pattern has wrong bit count");
  std::vector<NeuronForm> forms;
  const int n = net.input_dim();
  // post-activation of the previous layer as affine functions of the input
  RatMat prev_lin(n, RatVec(n, 0));
  RatVec prev_const(n, 0);
  for (int i = 0; i < n; ++i) prev_lin[i][i] = 1;

  std::size_t bit = 0;
  const auto& layers = net.layers();
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    const Layer& layer = layers[l];
    const std::size_t width = layer.bias.size();
    RatMat lin(width);
    RatVec cst(width);
    for (std::size_t i = 0; i < width; ++i) {
      RatVec row(n, 0);
      Rational c = layer.bias[i];
      for (std::size_t j = 0; j < layer.weights[i].size(); ++j) {
        const Rational& w = layer.weights[i][j];
        if (w == 0) continue;
        for (int k = 0; k < n; ++k) row[k] += w * prev_lin[j][k];
        c += w * prev_const[j];
      }
      forms.push_back(NeuronForm{row, c});
      if (p.bits[bit + i]) {
        lin[i] = std::move(row);
        cst[i] = c;
      } else {
        lin[i] = RatVec(n, 0);
        cst[i] = 0;
      }
    }
    bit += width;
    prev_lin = std::move(lin);
    prev_const = std::move(cst);
  }
  return forms;
}

AffineMap affine_map_for_pattern(const Network& net, const ActivationPattern& p) {
  if (static_cast<int>(p.bits.size()) != net.hidden_neuron_count())
    throw DimensionError("pattern has wrong bit count");
  const int n = net.input_dim();
  RatMat prev_lin(n, RatVec(n, 0));
  RatVec prev_const(n, 0);
  for (int i = 0; i < n; ++i) prev_lin[i][i] = 1;

  std::size_t bit = 0;
  const auto& layers = net.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const Layer& layer = layers[l];
    const std::size_t width = layer.bias.size();
    const bool is_output = l + 1 == layers.size();
    RatMat lin(width);
    RatVec cst(width);
    for (std::size_t i = 0; i < width; ++i) {
      RatVec row(n, 0);
      Rational c = layer.bias[i];
      for (std::size_t j = 0; j < layer.weights[i].size(); ++j) {
        const Rational& w = layer.weights[i][j];
        if (w == 0) continue;
        for (int k = 0; k < n; ++k) row[k] += w * prev_lin[j][k];
        c += w * prev_const[j];
      }
      const bool active = is_output || p.bits[bit + i];
      lin[i] = active ? std::move(row) : RatVec(n, 0);
      cst[i] = active ? c : Rational(0);
    }
    if (!is_output) bit += width;
    prev_lin = std::move(lin);
    prev_const = std::move(cst);
  }
  return AffineMap{std::move(prev_lin), std::move(prev_const)};
}

bool all_preactivations_nonzero(const Network& net, const RatVec& x) {
  check_input(net, x);
  RatVec h = x;
  const auto& layers = net.layers();
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    RatVec z = vec_add(mat_vec(layers[l].weights, h), layers[l].bias);
    for (const Rational& zi : z)
      if (zi == 0) return false;
    h = relu(std::move(z));
  }
  return true;
}

}  // namespace relucert
