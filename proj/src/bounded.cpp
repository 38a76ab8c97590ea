// SPDX-License-Identifier: Apache-2.0
#include "relucert/bounded.hpp"

#include "relucert/error.hpp"

namespace relucert {

IntervalVector ibp_bounds(const Network& net, const Box& box) {
  if (static_cast<int>(box.lower.size()) != net.input_dim())
    throw DimensionError("ibp_bounds: box dimension does not match input_dim");
  IntervalVector iv(box.lower.size());
  for (std::size_t j = 0; j < iv.size(); ++j) iv[j] = Interval{box.lower[j], box.upper[j]};

  const auto& layers = net.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const Layer& layer = layers[l];
    IntervalVector next(layer.bias.size());
    for (std::size_t i = 0; i < layer.bias.size(); ++i) {
      Rational lo = layer.bias[i], hi = layer.bias[i];
      for (std::size_t j = 0; j < layer.weights[i].size(); ++j) {
        const Rational& w = layer.weights[i][j];
        if (w == 0) continue;
        if (w > 0) {
          lo += w * iv[j].lo;
          hi += w * iv[j].hi;
        } else {
          lo += w * iv[j].hi;
          hi += w * iv[j].lo;
        }
      }
      if (l + 1 < layers.size()) {  // hidden: ReLU clamp
        if (lo < 0) lo = 0;
        if (hi < 0) hi = 0;
      }
      next[i] = Interval{std::move(lo), std::move(hi)};
    }
    iv = std::move(next);
  }
  return iv;
}

Verdict verify_bounded(const Network& net, const LinearSpec& spec, const Box& box,
                       BoundedMethod method, std::uint64_t region_cap) {
  if (static_cast<int>(spec.c.size()) != net.output_dim())
    throw DimensionError("verify_bounded: spec length mismatch");
  if (method == BoundedMethod::ExactOnBox) return verify_full(net, spec, Domain(box), region_cap);

  const auto t0 = std::chrono::steady_clock::now();
  IntervalVector iv = ibp_bounds(net, box);
  Rational upper = 0;
  for (std::size_t i = 0; i < spec.c.size(); ++i)
    upper += spec.c[i] >= 0 ? spec.c[i] * iv[i].hi : spec.c[i] * iv[i].lo;
  Verdict verdict;
  verdict.kind = upper <= spec.b ? VerdictKind::Certified : VerdictKind::Unknown;
  verdict.stats.elapsed = std::chrono::steady_clock::now() - t0;
  return verdict;
}

std::optional<RatVec> generality_gap_witness(const Network& net, const LinearSpec& spec,
                                             const Box& box, std::uint64_t region_cap) {
  Verdict global = verify_full(net, spec, FullSpace{net.input_dim()}, region_cap);
  if (global.kind == VerdictKind::Certified) return std::nullopt;
  const RatVec& w = *global.witness;
  bool inside = true;
  for (std::size_t j = 0; j < w.size(); ++j)
    if (w[j] < box.lower[j] || w[j] > box.upper[j]) inside = false;
  if (inside)
    throw PreconditionError(
        "generality_gap_witness: violation inside the box; the box verdict was not Certified");
  return w;
}

}  // namespace relucert
