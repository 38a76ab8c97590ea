// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "relucert/verify.hpp"

namespace relucert {

struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
};

using IntervalVector = std::vector<Interval>;

enum class BoundedMethod { Ibp, ExactOnBox };

/// Sound interval enclosure of every output over the box: layer-wise affine
/// interval arithmetic with ReLU clamping. Linear in neuron count.
IntervalVector ibp_bounds(const Network& net, const Box& box);

/// The bounded verification regime. method=Ibp certifies when the interval
/// upper bound of c.f stays under b and otherwise answers Unknown (an interval
/// excess is not a counterexample). method=ExactOnBox delegates to verify_full
/// restricted to the box. Neither says anything about inputs outside the box.
Verdict verify_bounded(const Network& net, const LinearSpec& spec, const Box& box,
                       BoundedMethod method, std::uint64_t region_cap = kDefaultRegionCap);

/// Given a net certified on the box (precondition), searches the full space for
/// a violation outside the box: the concrete "certified on the bounded domain,
/// misaligned on the full one" exhibit. Empty when the spec holds globally.
std::optional<RatVec> generality_gap_witness(const Network& net, const LinearSpec& spec,
                                             const Box& box,
                                             std::uint64_t region_cap = kDefaultRegionCap);

}  // namespace relucert
