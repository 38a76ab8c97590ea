// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>

#include "relucert/region.hpp"

namespace relucert {

// Linear alignment predicate: for all x in the domain, c . f(x) <= b.
struct LinearSpec {
  RatVec c;
  Rational b;
};

enum class VerdictKind { Certified, Violated, Unknown };
enum class BinaryVerdict { Aligned, Unaligned };

/// The one mapping from trinary to binary verdicts. Unknown maps to unaligned,
/// preserving the no-false-positive direction for incomplete verifiers.
BinaryVerdict to_binary(VerdictKind kind);
const char* to_string(VerdictKind kind);
const char* to_string(BinaryVerdict verdict);

struct VerifyStats {
  std::uint64_t regions_examined = 0;
  std::uint64_t lp_calls = 0;
  std::chrono::nanoseconds elapsed{0};
};

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<RatVec> witness;   // Violated only
  std::optional<Rational> margin;  // c . f(witness) - b, exact and > 0
  VerifyStats stats;
};

/// Sound and complete verification of a linear spec over the full domain:
/// maximizes the spec form over every feasible region. Never returns Unknown;
/// throws RegionCapError when enumeration overruns the cap (the verdict is
/// withheld, never silently Certified).
Verdict verify_full(const Network& net, const LinearSpec& spec, const Domain& dom,
                    std::uint64_t region_cap = kDefaultRegionCap);

/// Exact universal behavioral equivalence via the stacked difference network.
/// Returns an input where the outputs differ when they do.
std::pair<bool, std::optional<RatVec>> equivalence_check(const Network& net1, const Network& net2,
                                                         const Domain& dom,
                                                         std::uint64_t region_cap = kDefaultRegionCap);

/// g(x) = f1(x) - f2(x) as a single exact ReLU network (depths equalized with
/// identity padding, hidden layers stacked block-diagonally).
Network difference_network(const Network& net1, const Network& net2);

}  // namespace relucert
