// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "relucert/proxy.hpp"
#include "relucert/verify.hpp"

namespace relucert {

// Continuous piecewise-linear function of one variable, kept in a normalized
// form: breakpoints strictly increasing, interior collinear breakpoints
// removed (a purely affine function keeps a single anchor breakpoint).
class PWLFunction {
 public:
  PWLFunction(std::vector<Rational> breakpoints, std::vector<Rational> values,
              Rational left_slope, Rational right_slope);

  static PWLFunction affine(const Rational& slope, const Rational& value_at_zero);
  static PWLFunction constant(const Rational& value) { return affine(0, value); }

  Rational eval(const Rational& x) const;

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& left_slope() const { return left_slope_; }
  const Rational& right_slope() const { return right_slope_; }

  /// Slope of segment i, where segment 0 lies left of the first breakpoint and
  /// segment breakpoints().size() lies right of the last.
  Rational segment_slope(std::size_t i) const;

  bool same_function(const PWLFunction& other) const;

 private:
  void normalize();

  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
  Rational left_slope_;
  Rational right_slope_;
};

// Where and how tightly to graft one function onto another: each support point
// gets an epsilon-neighborhood whose inner plateau carries the grafted values.
struct PatchPlan {
  EvalSupport support;  // 1-D points
  Rational epsilon;
  Rational plateau;
};

/// Validates neighborhood disjointness (pairwise separation > 2*epsilon) and
/// 0 < plateau < epsilon. Omitted plateau defaults to epsilon/2.
PatchPlan make_patch_plan(EvalSupport support, Rational epsilon,
                          std::optional<Rational> plateau = std::nullopt);

/// Exact piecewise-linear form of a 1-in/1-out network via region enumeration.
/// Over a FullSpace domain the result agrees with forward() everywhere.
PWLFunction pwl_from_network_1d(const Network& net, const Domain& dom,
                                std::uint64_t region_cap = kDefaultRegionCap);

/// Equals f1 on every [s-plateau, s+plateau], f2 outside every [s-eps, s+eps],
/// linear on the transition bands. Empty support returns f2 unchanged.
PWLFunction patch(const PWLFunction& f1, const PWLFunction& f2, const PatchPlan& plan);

/// One-hidden-layer ReLU network computing f exactly everywhere:
/// f(x) = f(b0) + sL*(x - b0) + sum_k delta_k * ReLU(x - b_k), with the affine
/// part realized as sL*(ReLU(x) - ReLU(-x)). A constant function compiles to a
/// degenerate width-1 layer with zero outgoing weight.
Network compile_pwl_to_network(const PWLFunction& f);

struct LegResult {
  bool pass = false;
  std::string detail;
};

// Machine-checked evidence that the finite-support proxy certifies a network
// the exact verifier refutes.
struct DemonstrationReport {
  DemonstrationReport(Network t1, Network t2, Network tp)
      : theta1(std::move(t1)), theta2(std::move(t2)), theta_prime(std::move(tp)) {}

  Network theta1;
  Network theta2;
  Network theta_prime;
  Rational tau;
  Rational score_theta1;
  Rational score_prime;
  RatVec witness;          // off-support violation of theta_prime
  Rational witness_margin;
  Rational gap;
  LegResult on_support_agreement;        // (a) exact score + pointwise equality on S
  LegResult proxy_verdict_parity;        // (b) both aligned at tau
  LegResult exact_violation_off_support; // (c) verify_full violated, witness in the f2 zone
  LegResult gap_is_one;                  // (d) proxy_gap(theta') = 1
  bool all_pass = false;
};

/// Builds theta' = compile(patch(pwl(theta1), pwl(theta2), plan)) and checks
/// the four unsoundness assertions. Preconditions (theta1 certified; theta2
/// violating somewhere outside all plan neighborhoods) throw PreconditionError
/// naming the failing leg.
DemonstrationReport build_unsound_pair(const Network& theta1, const Network& theta2,
                                       const PatchPlan& plan, const LinearSpec& spec,
                                       const Rational& tau,
                                       std::uint64_t region_cap = kDefaultRegionCap);

}  // namespace relucert
