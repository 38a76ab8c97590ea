// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "relucert/rational.hpp"

namespace relucert {

struct ConstraintRow {
  RatVec a;
  Rational b;  // a . x <= b
};

struct ConstraintSystem {
  int dimension = 0;
  std::vector<ConstraintRow> rows;

  void add(RatVec a, Rational b) { rows.push_back(ConstraintRow{std::move(a), std::move(b)}); }
  bool satisfied_by(const RatVec& x) const;
};

struct LPOptimal {
  Rational value;
  RatVec point;
};
struct LPUnbounded {
  RatVec ray;         // objective strictly increases along the ray
  RatVec base_point;  // feasible; stays feasible for every nonnegative step
};
struct LPInfeasible {};

using LPOutcome = std::variant<LPOptimal, LPUnbounded, LPInfeasible>;

/// Exact maximization of objective . x over a system of non-strict linear
/// inequalities with free variables. Deterministic (Bland's anti-cycling rule);
/// every returned point and ray is re-checked against the constraints by exact
/// substitution before it is handed back. One-dimensional systems are solved by
/// direct interval reduction, everything else by a self-contained two-phase
/// rational simplex.
LPOutcome solve_max(const RatVec& objective, const ConstraintSystem& cs);

/// Feasibility with witness; equivalent to solve_max with the zero objective.
std::pair<bool, std::optional<RatVec>> feasible(const ConstraintSystem& cs);

namespace detail {
// General simplex path regardless of dimension (kept callable so tests can
// cross-check the 1-D interval shortcut against it).
LPOutcome solve_max_simplex(const RatVec& objective, const ConstraintSystem& cs);
}  // namespace detail

}  // namespace relucert
