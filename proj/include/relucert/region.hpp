// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "relucert/lp.hpp"
#include "relucert/network.hpp"
#include "relucert/rational.hpp"

namespace relucert {

struct FullSpace {
  int dimension = 0;
};

struct Box {
  RatVec lower;
  RatVec upper;
};

using Domain = std::variant<FullSpace, Box>;

int domain_dimension(const Domain& dom);
Box make_box(RatVec lower, RatVec upper);  // validates lower <= upper

// A feasible linear region: an activation pattern that is attained on a set of
// positive measure within the domain, together with the closed polyhedral
// system carrying it and the exact affine restriction of the network there.
struct Region {
  ActivationPattern pattern;
  ConstraintSystem constraints;  // pattern closures intersected with the domain
  AffineMap affine;
  RatVec witness;  // strictly interior point found by the feasibility test
};

struct EnumStats {
  std::uint64_t lp_calls = 0;
  std::uint64_t patterns_tested = 0;
};

inline constexpr std::uint64_t kDefaultRegionCap = 1'000'000;
inline constexpr int kDefaultOracleCap = 12;

/// Breadth-first region enumeration: start from the pattern at a feasible seed
/// point, flip one neuron at a time, keep the LP-feasible neighbors. Yields each
/// feasible region exactly once, in a deterministic order; the callback may
/// return false to stop early. Throws RegionCapError past the cap.
void for_each_region(const Network& net, const Domain& dom,
                     const std::function<bool(const Region&)>& fn,
                     std::uint64_t cap = kDefaultRegionCap, EnumStats* stats = nullptr);

std::vector<Region> enumerate_regions(const Network& net, const Domain& dom,
                                      std::uint64_t cap = kDefaultRegionCap,
                                      EnumStats* stats = nullptr);

std::uint64_t count_regions(const Network& net, const Domain& dom,
                            std::uint64_t cap = kDefaultRegionCap, EnumStats* stats = nullptr);

/// Test oracle: feasibility-check all 2^N patterns. Refuses N above the cap.
std::vector<Region> enumerate_regions_exhaustive(const Network& net, const Domain& dom,
                                                 int oracle_cap = kDefaultOracleCap,
                                                 EnumStats* stats = nullptr);

/// Region-growth reference value (n/L)^(L*(d-1)), exact. An asymptotic
/// expression used for report curves, not a count.
Rational montufar_expression(int n, int L, int d);

namespace detail {
// Strict-interior feasibility of a pattern over the domain: a witness where
// every non-degenerate neuron's pre-activation has the sign its bit demands
// with positive margin. Neurons whose pre-activation is symbolically zero under
// the pattern impose no strictness (their bit must be false).
std::optional<RatVec> pattern_witness(const Network& net, const ActivationPattern& p,
                                      const Domain& dom, EnumStats* stats);
ConstraintSystem closed_region_system(const Network& net, const ActivationPattern& p,
                                      const Domain& dom);
}  // namespace detail

}  // namespace relucert
