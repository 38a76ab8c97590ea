// SPDX-License-Identifier: Apache-2.0
#include "relucert/lp.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

#include "relucert/error.hpp"

namespace relucert {

bool ConstraintSystem::satisfied_by(const RatVec& x) const {
  for (const ConstraintRow& row : rows)
    if (dot(row.a, x) > row.b) return false;
  return true;
}

namespace {

void check_shapes(const RatVec& objective, const ConstraintSystem& cs) {
  if (cs.dimension <= 0) throw DimensionError("lp: dimension must be positive");
  if (static_cast<int>(objective.size()) != cs.dimension)
    throw DimensionError("lp: objective length does not match dimension");
  for (const ConstraintRow& row : cs.rows)
    if (static_cast<int>(row.a.size()) != cs.dimension)
      throw DimensionError("lp: constraint row length does not match dimension");
}

void recheck_point(const RatVec& objective, const ConstraintSystem& cs, const Rational& value,
                   const RatVec& x) {
  if (!cs.satisfied_by(x)) throw std::logic_error("lp: optimal point violates a constraint");
  if (dot(objective, x) != value) throw std::logic_error("lp: optimal value mismatch");
}

void recheck_ray(const RatVec& objective, const ConstraintSystem& cs, const RatVec& ray,
                 const RatVec& base) {
  if (!cs.satisfied_by(base)) throw std::logic_error("lp: unbounded base point infeasible");
  if (dot(objective, ray) <= 0) throw std::logic_error("lp: ray does not increase objective");
  for (const ConstraintRow& row : cs.rows)
    if (dot(row.a, ray) > 0) throw std::logic_error("lp: ray leaves the feasible set");
}

// max w*x over an interval of the line; closed bounds only.
LPOutcome solve_max_1d(const RatVec& objective, const ConstraintSystem& cs) {
  bool has_lo = false, has_hi = false;
  Rational lo = 0, hi = 0;
  for (const ConstraintRow& row : cs.rows) {
    const Rational& k = row.a[0];
    if (k == 0) {
      if (row.b < 0) return LPInfeasible{};
      continue;
    }
    Rational bound = row.b / k;
    if (k > 0) {
      if (!has_hi || bound < hi) hi = bound;
      has_hi = true;
    } else {
      if (!has_lo || bound > lo) lo = bound;
      has_lo = true;
    }
  }
  if (has_lo && has_hi && lo > hi) return LPInfeasible{};
  const Rational w = objective[0];
  Rational anchor = has_lo ? lo : (has_hi ? hi : Rational(0));
  if (w > 0) {
    if (has_hi) return LPOptimal{w * hi, {hi}};
    return LPUnbounded{{Rational(1)}, {anchor}};
  }
  if (w < 0) {
    if (has_lo) return LPOptimal{w * lo, {lo}};
    return LPUnbounded{{Rational(-1)}, {has_hi ? hi : Rational(0)}};
  }
  return LPOptimal{Rational(0), {anchor}};
}

// Dense two-phase tableau simplex over exact rationals, Bland's rule.
class Tableau {
 public:
  Tableau(const RatVec& objective, const ConstraintSystem& cs)
      : n_(cs.dimension), m_(static_cast<int>(cs.rows.size())) {
    structural_ = 2 * n_;  // free x split as x = y+ - y-
    cols_ = structural_ + m_;
    rows_.assign(m_, RatVec(cols_ + 1, 0));
    basis_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      const ConstraintRow& row = cs.rows[i];
      for (int j = 0; j < n_; ++j) {
        rows_[i][j] = row.a[j];
        rows_[i][n_ + j] = -row.a[j];
      }
      rows_[i][structural_ + i] = 1;
      rows_[i][cols_] = row.b;
    }
    objective_ = objective;
  }

  LPOutcome solve() {
    if (!phase_one()) return LPInfeasible{};
    setup_phase_two_costs();
    int entering = -1;
    if (run(entering) == StepResult::Unbounded) return make_unbounded(entering);
    return make_optimal();
  }

 private:
  enum class StepResult { Optimal, Unbounded };

  bool phase_one() {
    std::vector<int> art_rows;
    for (int i = 0; i < m_; ++i)
      if (rows_[i][cols_] < 0) art_rows.push_back(i);
    if (art_rows.empty()) {
      for (int i = 0; i < m_; ++i) basis_[i] = structural_ + i;
      return true;
    }
    // negate deficient rows and give each an artificial basic column
    const int art_base = cols_;
    const int extra = static_cast<int>(art_rows.size());
    for (int i = 0; i < m_; ++i) {
      RatVec grown(cols_ + extra + 1, 0);
      for (int j = 0; j < cols_; ++j) grown[j] = rows_[i][j];
      grown[cols_ + extra] = rows_[i][cols_];
      rows_[i] = std::move(grown);
    }
    cols_ += extra;
    int next_art = art_base;
    for (int i = 0; i < m_; ++i) {
      if (rows_[i][cols_] < 0) {
        for (Rational& v : rows_[i]) v = -v;
        rows_[i][next_art] = 1;
        basis_[i] = next_art++;
      } else {
        basis_[i] = structural_ + i;
      }
    }
    enterable_.assign(cols_, true);
    for (int j = art_base; j < cols_; ++j) enterable_[j] = false;

    // phase-1 objective: maximize -sum(artificials)
    cost_.assign(cols_, 0);
    obj_ = 0;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= art_base) {
        for (int j = 0; j < cols_; ++j)
          if (j < art_base) cost_[j] += rows_[i][j];
        obj_ -= rows_[i][cols_];
      }
    }
    int entering = -1;
    if (run(entering) == StepResult::Unbounded)
      throw std::logic_error("lp: phase-1 objective cannot be unbounded");
    if (obj_ != 0) return false;

    // pivot remaining zero-level artificials out; drop rows that became redundant
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < art_base) continue;
      int piv = -1;
      for (int j = 0; j < art_base; ++j) {
        if (rows_[i][j] != 0) {
          piv = j;
          break;
        }
      }
      if (piv >= 0) {
        pivot(i, piv);
      } else {
        rows_[i].assign(cols_ + 1, 0);  // redundant: 0 = 0
        basis_[i] = -1;
      }
    }
    drop_dead_rows();
    art_count_ = extra;
    return true;
  }

  void drop_dead_rows() {
    std::vector<RatVec> keep_rows;
    std::vector<int> keep_basis;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= 0) {
        keep_rows.push_back(std::move(rows_[i]));
        keep_basis.push_back(basis_[i]);
      }
    }
    rows_ = std::move(keep_rows);
    basis_ = std::move(keep_basis);
    m_ = static_cast<int>(rows_.size());
  }

  void setup_phase_two_costs() {
    if (enterable_.empty()) enterable_.assign(cols_, true);
    for (int j = cols_ - art_count_; j < cols_; ++j) enterable_[j] = false;
    cost_.assign(cols_, 0);
    obj_ = 0;
    auto true_cost = [&](int j) -> Rational {
      if (j < n_) return objective_[j];
      if (j < structural_) return -objective_[j - n_];
      return 0;
    };
    for (int j = 0; j < cols_; ++j) cost_[j] = true_cost(j);
    for (int i = 0; i < m_; ++i) {
      Rational cb = true_cost(basis_[i]);
      if (cb == 0) continue;
      for (int j = 0; j < cols_; ++j) cost_[j] -= cb * rows_[i][j];
      obj_ += cb * rows_[i][cols_];
    }
  }

  StepResult run(int& entering_out) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (enterable_[j] && cost_[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return StepResult::Optimal;
      int leave = -1;
      Rational best_ratio = 0;
      for (int i = 0; i < m_; ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rational ratio = rows_[i][cols_] / rows_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        entering_out = enter;
        return StepResult::Unbounded;
      }
      pivot(leave, enter);
    }
  }

  void pivot(int r, int j) {
    const Rational piv = rows_[r][j];
    if (piv == 0) throw std::logic_error("lp: pivot on zero element");
    for (Rational& v : rows_[r]) v /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const Rational factor = rows_[i][j];
      if (factor == 0) continue;
      for (int k = 0; k <= cols_; ++k) rows_[i][k] -= factor * rows_[r][k];
    }
    const Rational cfac = cost_[j];
    if (cfac != 0) {
      for (int k = 0; k < cols_; ++k) cost_[k] -= cfac * rows_[r][k];
      obj_ += cfac * rows_[r][cols_];
    }
    basis_[r] = j;
  }

  RatVec column_values() const {
    RatVec y(cols_, 0);
    for (int i = 0; i < m_; ++i) y[basis_[i]] = rows_[i][cols_];
    return y;
  }

  RatVec to_x(const RatVec& y) const {
    RatVec x(n_);
    for (int j = 0; j < n_; ++j) x[j] = y[j] - y[n_ + j];
    return x;
  }

  LPOutcome make_optimal() const {
    return LPOptimal{obj_, to_x(column_values())};
  }

  LPOutcome make_unbounded(int enter) const {
    RatVec d(cols_, 0);
    d[enter] = 1;
    for (int i = 0; i < m_; ++i) d[basis_[i]] = -rows_[i][enter];
    return LPUnbounded{to_x(d), to_x(column_values())};
  }

  int n_;
  int m_;
  int structural_ = 0;
  int cols_ = 0;
  int art_count_ = 0;
  std::vector<RatVec> rows_;
  std::vector<int> basis_;
  std::vector<bool> enterable_;
  RatVec cost_;
  Rational obj_;
  RatVec objective_;
};

LPOutcome solve_checked(const RatVec& objective, const ConstraintSystem& cs, LPOutcome out) {
  if (const auto* opt = std::get_if<LPOptimal>(&out)) {
    recheck_point(objective, cs, opt->value, opt->point);
  } else if (const auto* unb = std::get_if<LPUnbounded>(&out)) {
    recheck_ray(objective, cs, unb->ray, unb->base_point);
  }
  return out;
}

}  // namespace

namespace detail {

LPOutcome solve_max_simplex(const RatVec& objective, const ConstraintSystem& cs) {
  check_shapes(objective, cs);
  return solve_checked(objective, cs, Tableau(objective, cs).solve());
}

}  // namespace detail

LPOutcome solve_max(const RatVec& objective, const ConstraintSystem& cs) {
  check_shapes(objective, cs);
  if (cs.dimension == 1) return solve_checked(objective, cs, solve_max_1d(objective, cs));
  return solve_checked(objective, cs, Tableau(objective, cs).solve());
}

std::pair<bool, std::optional<RatVec>> feasible(const ConstraintSystem& cs) {
  LPOutcome out = solve_max(RatVec(cs.dimension, 0), cs);
  if (const auto* opt = std::get_if<LPOptimal>(&out)) return {true, opt->point};
  return {false, std::nullopt};
}

}  // namespace relucert
