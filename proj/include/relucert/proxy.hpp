// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "relucert/verify.hpp"

namespace relucert {

// Finite evaluation support S: the only inputs a proxy verifier ever sees.
struct EvalSupport {
  std::vector<RatVec> points;
  std::uint64_t seed = 0;  // recorded when generated
};

enum class ProxyVerdict { Aligned, Unaligned };

struct ProxyResult {
  Rational score;
  Rational tau;
  ProxyVerdict verdict;
};

/// Exact pass-fraction of the spec on the support. Depends only on the network
/// outputs at the support points.
Rational proxy_score(const Network& net, const LinearSpec& spec, const EvalSupport& support);

/// Threshold rule, ties accept. Both arguments must lie in [0,1].
ProxyVerdict proxy_verdict(const Rational& score, const Rational& tau);

ProxyResult proxy_evaluate(const Network& net, const LinearSpec& spec, const EvalSupport& support,
                           const Rational& tau);

/// |A* - proxy_score| with A* the exact-verifier indicator over the domain.
Rational proxy_gap(const Network& net, const LinearSpec& spec, const EvalSupport& support,
                   const Domain& dom, std::uint64_t region_cap = kDefaultRegionCap);

/// Deterministic seeded support of n points inside the box.
EvalSupport make_seeded_support(const Box& box, int count, std::uint64_t seed);

}  // namespace relucert
