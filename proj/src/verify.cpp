// SPDX-License-Identifier: Apache-2.0
#include "relucert/verify.hpp"

#include <stdexcept>
#include <string>

#include "relucert/error.hpp"

namespace relucert {

BinaryVerdict to_binary(VerdictKind kind) {
  return kind == VerdictKind::Certified ? BinaryVerdict::Aligned : BinaryVerdict::Unaligned;
}

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Certified: return "certified";
    case VerdictKind::Violated: return "violated";
    case VerdictKind::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(BinaryVerdict verdict) {
  return verdict == BinaryVerdict::Aligned ? "aligned" : "unaligned";
}

namespace {

void check_spec(const Network& net, const LinearSpec& spec, const Domain& dom) {
  if (static_cast<int>(spec.c.size()) != net.output_dim())
    throw DimensionError("spec: c length does not match network output dimension");
  if (domain_dimension(dom) != net.input_dim())
    throw DimensionError("spec: domain dimension does not match network input");
}

// Walk x = base + 2^k * ray until the margin turns positive. The objective is
// affine with positive slope along the ray, so this terminates.
std::pair<RatVec, Rational> step_to_violation(const Network& net, const LinearSpec& spec,
                                              const RatVec& base, const RatVec& ray) {
  Rational step = 1;
  for (int iter = 0; iter < 20000; ++iter) {
    RatVec x = vec_add(base, vec_scale(step, ray));
    Rational margin = dot(spec.c, forward(net, x)) - spec.b;
    if (margin > 0) return {std::move(x), std::move(margin)};
    step *= 2;
  }
  throw std::logic_error("verify_full: ray failed to produce a violation");
}

}  // namespace

Verdict verify_full(const Network& net, const LinearSpec& spec, const Domain& dom,
                    std::uint64_t region_cap) {
  check_spec(net, spec, dom);
  const auto t0 = std::chrono::steady_clock::now();
  Verdict verdict;
  verdict.kind = VerdictKind::Certified;
  EnumStats enum_stats;

  for_each_region(
      net, dom,
      [&](const Region& region) {
        ++verdict.stats.regions_examined;
        // objective over x: c^T (A x + c0)
        RatVec objective(net.input_dim(), 0);
        for (int j = 0; j < net.input_dim(); ++j)
          for (std::size_t i = 0; i < spec.c.size(); ++i)
            objective[j] += spec.c[i] * region.affine.linear[i][j];
        const Rational offset = dot(spec.c, region.affine.constant);
        ++verdict.stats.lp_calls;
        LPOutcome out = solve_max(objective, region.constraints);
        if (const auto* opt = std::get_if<LPOptimal>(&out)) {
          if (opt->value + offset > spec.b) {
            Rational margin = dot(spec.c, forward(net, opt->point)) - spec.b;
            if (margin != opt->value + offset - spec.b)
              throw std::logic_error("verify_full: margin re-evaluation mismatch");
            verdict.kind = VerdictKind::Violated;
            verdict.witness = opt->point;
            verdict.margin = std::move(margin);
            return false;
          }
        } else if (const auto* unb = std::get_if<LPUnbounded>(&out)) {
          auto [x, margin] = step_to_violation(net, spec, unb->base_point, unb->ray);
          verdict.kind = VerdictKind::Violated;
          verdict.witness = std::move(x);
          verdict.margin = std::move(margin);
          return false;
        } else {
          throw std::logic_error("verify_full: enumerated region is infeasible");
        }
        return true;
      },
      region_cap, &enum_stats);

  verdict.stats.lp_calls += enum_stats.lp_calls;
  verdict.stats.elapsed = std::chrono::steady_clock::now() - t0;
  return verdict;
}

namespace {

// Appends one exact identity hidden layer (v -> (ReLU(v), ReLU(-v)), recombined
// by the following layer) just before the output layer.
Network pad_once(const Network& net) {
  std::vector<Layer> layers = net.layers();
  Layer output = layers.back();
  layers.pop_back();
  const std::size_t k =
      layers.empty() ? static_cast<std::size_t>(net.input_dim()) : layers.back().bias.size();
  Layer identity;
  identity.weights.assign(2 * k, RatVec(k, 0));
  identity.bias.assign(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    identity.weights[i][i] = 1;
    identity.weights[k + i][i] = -1;
  }
  Layer new_output;
  new_output.bias = output.bias;
  new_output.weights.assign(output.weights.size(), RatVec(2 * k, 0));
  for (std::size_t r = 0; r < output.weights.size(); ++r)
    for (std::size_t j = 0; j < k; ++j) {
      new_output.weights[r][j] = output.weights[r][j];
      new_output.weights[r][k + j] = -output.weights[r][j];
    }
  layers.push_back(std::move(identity));
  layers.push_back(std::move(new_output));
  return Network(net.input_dim(), std::move(layers));
}

}  // namespace

Network difference_network(const Network& net1, const Network& net2) {
  if (net1.input_dim() != net2.input_dim())
    throw DimensionError("difference_network: input dimensions differ");
  if (net1.output_dim() != net2.output_dim())
    throw DimensionError("difference_network: output dimensions differ");
  Network a = net1, b = net2;
  while (a.hidden_layer_count() < b.hidden_layer_count()) a = pad_once(a);
  while (b.hidden_layer_count() < a.hidden_layer_count()) b = pad_once(b);

  const int hidden = a.hidden_layer_count();
  std::vector<Layer> layers;
  for (int l = 0; l < hidden; ++l) {
    const Layer& la = a.layers()[l];
    const Layer& lb = b.layers()[l];
    const std::size_t wa = la.bias.size(), wb = lb.bias.size();
    const std::size_t ina = la.weights[0].size(), inb = lb.weights[0].size();
    Layer merged;
    merged.bias = la.bias;
    merged.bias.insert(merged.bias.end(), lb.bias.begin(), lb.bias.end());
    if (l == 0) {
      // both halves read the same input
      merged.weights = la.weights;
      merged.weights.insert(merged.weights.end(), lb.weights.begin(), lb.weights.end());
    } else {
      merged.weights.assign(wa + wb, RatVec(ina + inb, 0));
      for (std::size_t i = 0; i < wa; ++i)
        for (std::size_t j = 0; j < ina; ++j) merged.weights[i][j] = la.weights[i][j];
      for (std::size_t i = 0; i < wb; ++i)
        for (std::size_t j = 0; j < inb; ++j) merged.weights[wa + i][ina + j] = lb.weights[i][j];
    }
    layers.push_back(std::move(merged));
  }
  const Layer& oa = a.layers().back();
  const Layer& ob = b.layers().back();
  Layer out;
  out.bias = vec_sub(oa.bias, ob.bias);
  const std::size_t ina = oa.weights[0].size(), inb = ob.weights[0].size();
  out.weights.assign(oa.weights.size(), RatVec(hidden == 0 ? ina : ina + inb, 0));
  if (hidden == 0) {
    // both nets purely affine: subtract directly
    for (std::size_t r = 0; r < out.weights.size(); ++r)
      for (std::size_t j = 0; j < ina; ++j)
        out.weights[r][j] = oa.weights[r][j] - ob.weights[r][j];
  } else {
    for (std::size_t r = 0; r < out.weights.size(); ++r) {
      for (std::size_t j = 0; j < ina; ++j) out.weights[r][j] = oa.weights[r][j];
      for (std::size_t j = 0; j < inb; ++j) out.weights[r][ina + j] = -ob.weights[r][j];
    }
  }
  layers.push_back(std::move(out));
  return Network(a.input_dim(), std::move(layers));
}

std::pair<bool, std::optional<RatVec>> equivalence_check(const Network& net1, const Network& net2,
                                                         const Domain& dom,
                                                         std::uint64_t region_cap) {
  Network diff = difference_network(net1, net2);
  const int out_dim = diff.output_dim();
  for (int i = 0; i < out_dim; ++i) {
    for (int sign : {1, -1}) {
      LinearSpec spec;
      spec.c.assign(out_dim, 0);
      spec.c[i] = sign;
      spec.b = 0;
      Verdict v = verify_full(diff, spec, dom, region_cap);
      if (v.kind == VerdictKind::Violated) {
        if (forward(net1, *v.witness) == forward(net2, *v.witness))
          throw std::logic_error("equivalence_check: witness does not separate the networks");
        return {false, v.witness};
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace relucert
