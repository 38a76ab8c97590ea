// SPDX-License-Identifier: Apache-2.0
#include "relucert/pwl.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "relucert/error.hpp"

namespace relucert {

PWLFunction::PWLFunction(std::vector<Rational> breakpoints, std::vector<Rational> values,
                         Rational left_slope, Rational right_slope)
    : breakpoints_(std::move(breakpoints)),
      values_(std::move(values)),
      left_slope_(std::move(left_slope)),
      right_slope_(std::move(right_slope)) {
  if (breakpoints_.empty() || breakpoints_.size() != values_.size())
    throw FormatError("pwl: need matching nonempty breakpoint/value lists");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (breakpoints_[i - 1] >= breakpoints_[i])
      throw FormatError("pwl: breakpoints must be strictly increasing");
  normalize();
}

PWLFunction PWLFunction::affine(const Rational& slope, const Rational& value_at_zero) {
  return PWLFunction({Rational(0)}, {value_at_zero}, slope, slope);
}

Rational PWLFunction::segment_slope(std::size_t i) const {
  if (i == 0) return left_slope_;
  if (i >= breakpoints_.size()) return right_slope_;
  return (values_[i] - values_[i - 1]) / (breakpoints_[i] - breakpoints_[i - 1]);
}

void PWLFunction::normalize() {
  std::vector<Rational> bps, vals;
  const std::size_t m = breakpoints_.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (segment_slope(i) != segment_slope(i + 1)) {
      bps.push_back(breakpoints_[i]);
      vals.push_back(values_[i]);
    }
  }
  if (bps.empty()) {  // affine: keep a single anchor
    bps.push_back(breakpoints_[0]);
    vals.push_back(values_[0]);
  }
  breakpoints_ = std::move(bps);
  values_ = std::move(vals);
}

Rational PWLFunction::eval(const Rational& x) const {
  if (x <= breakpoints_.front()) return values_.front() + left_slope_ * (x - breakpoints_.front());
  if (x >= breakpoints_.back()) return values_.back() + right_slope_ * (x - breakpoints_.back());
  std::size_t hi = 1;
  while (breakpoints_[hi] < x) ++hi;
  const Rational& b0 = breakpoints_[hi - 1];
  const Rational& b1 = breakpoints_[hi];
  const Rational t = (x - b0) / (b1 - b0);
  return values_[hi - 1] + t * (values_[hi] - values_[hi - 1]);
}

bool PWLFunction::same_function(const PWLFunction& other) const {
  if (left_slope_ != other.left_slope_ || right_slope_ != other.right_slope_) return false;
  const bool affine_a = left_slope_ == right_slope_ && breakpoints_.size() == 1;
  if (affine_a) return eval(0) == other.eval(0);
  return breakpoints_ == other.breakpoints_ && values_ == other.values_;
}

PatchPlan make_patch_plan(EvalSupport support, Rational epsilon, std::optional<Rational> plateau) {
  if (epsilon <= 0) throw FormatError("patch plan: epsilon must be positive");
  Rational pl = plateau.value_or(epsilon / 2);
  if (pl <= 0 || pl >= epsilon) throw FormatError("patch plan: need 0 < plateau < epsilon");
  std::vector<Rational> pts;
  for (const RatVec& p : support.points) {
    if (p.size() != 1) throw DimensionError("patch plan: support points must be 1-D");
    pts.push_back(p[0]);
  }
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] - pts[i - 1] <= 2 * epsilon)
      throw FormatError("patch plan: support points closer than 2*epsilon (overlapping neighborhoods)");
  return PatchPlan{std::move(support), std::move(epsilon), std::move(pl)};
}

PWLFunction pwl_from_network_1d(const Network& net, const Domain& dom, std::uint64_t region_cap) {
  if (net.input_dim() != 1 || net.output_dim() != 1)
    throw DimensionError("pwl_from_network_1d: network must be 1-in/1-out");

  struct Piece {
    bool has_lo = false, has_hi = false;
    Rational lo, hi, slope, intercept;
  };
  std::vector<Piece> pieces;
  for (const Region& region : enumerate_regions(net, dom, region_cap)) {
    Piece piece;
    piece.slope = region.affine.linear[0][0];
    piece.intercept = region.affine.constant[0];
    for (const ConstraintRow& row : region.constraints.rows) {
      const Rational& k = row.a[0];
      if (k == 0) continue;
      Rational bound = row.b / k;
      if (k > 0) {
        if (!piece.has_hi || bound < piece.hi) piece.hi = bound;
        piece.has_hi = true;
      } else {
        if (!piece.has_lo || bound > piece.lo) piece.lo = bound;
        piece.has_lo = true;
      }
    }
    pieces.push_back(std::move(piece));
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    if (a.has_lo != b.has_lo) return !a.has_lo;
    return a.has_lo && a.lo < b.lo;
  });

  if (pieces.size() == 1) {
    const Piece& p = pieces[0];
    Rational anchor = 0;
    if (p.has_lo && p.lo > 0)
      anchor = p.lo;
    else if (p.has_hi && p.hi < 0)
      anchor = p.hi;
    return PWLFunction({anchor}, {p.slope * anchor + p.intercept}, p.slope, p.slope);
  }

  std::vector<Rational> bps, vals;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (!pieces[i].has_hi || !pieces[i + 1].has_lo || pieces[i].hi != pieces[i + 1].lo)
      throw std::logic_error("pwl_from_network_1d: regions do not tile the line");
    bps.push_back(pieces[i].hi);
    vals.push_back(forward(net, {pieces[i].hi})[0]);
  }
  return PWLFunction(std::move(bps), std::move(vals), pieces.front().slope, pieces.back().slope);
}

PWLFunction patch(const PWLFunction& f1, const PWLFunction& f2, const PatchPlan& plan) {
  std::vector<Rational> supports;
  for (const RatVec& p : plan.support.points) supports.push_back(p[0]);
  std::sort(supports.begin(), supports.end());
  if (supports.empty()) return f2;

  const Rational& eps = plan.epsilon;
  const Rational& pl = plan.plateau;
  auto in_plateau = [&](const Rational& x) {
    for (const Rational& s : supports)
      if (s - pl <= x && x <= s + pl) return true;
    return false;
  };
  auto in_band = [&](const Rational& x) {
    for (const Rational& s : supports)
      if (s - eps < x && x < s + eps) return true;
    return false;
  };

  std::map<Rational, Rational> points;  // breakpoint -> value
  for (const Rational& s : supports) {
    points[s - eps] = f2.eval(s - eps);
    points[s + eps] = f2.eval(s + eps);
    points[s - pl] = f1.eval(s - pl);
    points[s + pl] = f1.eval(s + pl);
  }
  for (const Rational& b : f1.breakpoints())
    if (in_plateau(b)) points[b] = f1.eval(b);
  for (const Rational& b : f2.breakpoints())
    if (!in_band(b)) points[b] = f2.eval(b);

  std::vector<Rational> bps, vals;
  for (const auto& [b, v] : points) {
    bps.push_back(b);
    vals.push_back(v);
  }
  return PWLFunction(std::move(bps), std::move(vals), f2.left_slope(), f2.right_slope());
}

Network compile_pwl_to_network(const PWLFunction& f) {
  struct Neuron {
    Rational w, b, out;
  };
  std::vector<Neuron> neurons;
  const Rational& sl = f.left_slope();
  if (sl != 0) {
    neurons.push_back(Neuron{Rational(1), Rational(0), sl});
    neurons.push_back(Neuron{Rational(-1), Rational(0), -sl});
  }
  for (std::size_t k = 0; k < f.breakpoints().size(); ++k) {
    Rational delta = f.segment_slope(k + 1) - f.segment_slope(k);
    if (delta != 0) neurons.push_back(Neuron{Rational(1), -f.breakpoints()[k], std::move(delta)});
  }
  if (neurons.empty()) neurons.push_back(Neuron{Rational(1), Rational(0), Rational(0)});

  Layer hidden, output;
  output.weights.assign(1, RatVec());
  for (const Neuron& n : neurons) {
    hidden.weights.push_back({n.w});
    hidden.bias.push_back(n.b);
    output.weights[0].push_back(n.out);
  }
  output.bias = {f.values().front() - sl * f.breakpoints().front()};
  return Network(1, {std::move(hidden), std::move(output)});
}

namespace {

// Largest-violation search for c*f2(x) - b > 0 over the closed complement of
// the patch neighborhoods, by exact segment analysis of the 1-D PWL.
std::optional<Rational> find_violation_outside(const PWLFunction& f2, const Rational& c,
                                               const Rational& b,
                                               const std::vector<Rational>& supports,
                                               const Rational& eps) {
  auto severity = [&](const Rational& x) { return c * f2.eval(x) - b; };
  auto in_zone = [&](const Rational& x) {
    for (const Rational& s : supports) {
      if (x > s - eps && x < s + eps) return false;
    }
    return true;
  };

  std::vector<Rational> candidates;
  for (const Rational& bp : f2.breakpoints())
    if (in_zone(bp)) candidates.push_back(bp);
  for (const Rational& s : supports) {
    candidates.push_back(s - eps);
    candidates.push_back(s + eps);
  }
  for (const Rational& x : candidates)
    if (in_zone(x) && severity(x) > 0) return x;

  // unbounded tails: severity is eventually linear in x
  const Rational tail_right = c * f2.right_slope();
  const Rational tail_left = c * f2.left_slope();
  Rational right_start = f2.breakpoints().back();
  Rational left_start = f2.breakpoints().front();
  if (!supports.empty()) {
    right_start = std::max(right_start, supports.back() + eps);
    left_start = std::min(left_start, supports.front() - eps);
  }
  if (tail_right > 0) {
    Rational step = 1;
    for (int i = 0; i < 4096; ++i) {
      Rational x = right_start + step;
      if (severity(x) > 0) return x;
      step *= 2;
    }
  }
  if (tail_left < 0) {
    Rational step = 1;
    for (int i = 0; i < 4096; ++i) {
      Rational x = left_start - step;
      if (severity(x) > 0) return x;
      step *= 2;
    }
  }
  return std::nullopt;
}

}  // namespace

DemonstrationReport build_unsound_pair(const Network& theta1, const Network& theta2,
                                       const PatchPlan& plan, const LinearSpec& spec,
                                       const Rational& tau, std::uint64_t region_cap) {
  if (theta1.input_dim() != 1 || theta1.output_dim() != 1 || theta2.input_dim() != 1 ||
      theta2.output_dim() != 1)
    throw DimensionError("build_unsound_pair: networks must be 1-in/1-out");
  if (plan.support.points.empty())
    throw PreconditionError("build_unsound_pair: empty patch support");
  if (tau < 0 || tau > 1) throw FormatError("build_unsound_pair: tau must lie in [0,1]");

  const Domain full = FullSpace{1};
  Verdict v1 = verify_full(theta1, spec, full, region_cap);
  if (v1.kind != VerdictKind::Certified)
    throw PreconditionError("build_unsound_pair: theta1 is not certified on the full domain");

  const PWLFunction f1 = pwl_from_network_1d(theta1, full, region_cap);
  const PWLFunction f2 = pwl_from_network_1d(theta2, full, region_cap);

  std::vector<Rational> supports;
  for (const RatVec& p : plan.support.points) supports.push_back(p[0]);
  std::sort(supports.begin(), supports.end());
  std::optional<Rational> off_violation =
      find_violation_outside(f2, spec.c[0], spec.b, supports, plan.epsilon);
  if (!off_violation)
    throw PreconditionError(
        "build_unsound_pair: theta2 does not violate the spec outside the patch neighborhoods");

  Network theta_prime = compile_pwl_to_network(patch(f1, f2, plan));
  DemonstrationReport report(theta1, theta2, std::move(theta_prime));
  report.tau = tau;

  // (a) the proxy sees identical evidence from theta' and theta1
  report.score_theta1 = proxy_score(theta1, spec, plan.support);
  report.score_prime = proxy_score(report.theta_prime, spec, plan.support);
  bool pointwise = true;
  for (const RatVec& s : plan.support.points)
    if (forward(report.theta_prime, s) != forward(theta1, s)) pointwise = false;
  report.on_support_agreement.pass = pointwise && report.score_prime == report.score_theta1;
  report.on_support_agreement.detail = "score(theta1)=" + to_string(report.score_theta1) +
                                       " score(theta')=" + to_string(report.score_prime) +
                                       (pointwise ? ", outputs match on S" : ", outputs DIFFER on S");

  // (b) both pass the threshold rule
  const bool aligned1 = proxy_verdict(report.score_theta1, tau) == ProxyVerdict::Aligned;
  const bool alignedP = proxy_verdict(report.score_prime, tau) == ProxyVerdict::Aligned;
  report.proxy_verdict_parity.pass = aligned1 && alignedP;
  report.proxy_verdict_parity.detail = std::string("theta1 ") + (aligned1 ? "aligned" : "unaligned") +
                                       ", theta' " + (alignedP ? "aligned" : "unaligned") + " at tau=" +
                                       to_string(tau);

  // (c) the exact verifier refutes theta', witnessed in the f2-agreement zone
  Verdict vp = verify_full(report.theta_prime, spec, full, region_cap);
  report.witness = RatVec{*off_violation};
  RatVec prime_out = forward(report.theta_prime, report.witness);
  RatVec theta2_out = forward(theta2, report.witness);
  report.witness_margin = spec.c[0] * prime_out[0] - spec.b;
  const bool zone_agrees = prime_out == theta2_out && f2.eval(*off_violation) == theta2_out[0];
  report.exact_violation_off_support.pass =
      vp.kind == VerdictKind::Violated && report.witness_margin > 0 && zone_agrees;
  report.exact_violation_off_support.detail =
      std::string("verify_full(theta')=") + to_string(vp.kind) + ", witness x=" +
      to_string(*off_violation) + ", margin=" + to_string(report.witness_margin) +
      (zone_agrees ? ", theta'=theta2 there" : ", zone agreement FAILED");

  // (d) the proxy gap is maximal
  report.gap = proxy_gap(report.theta_prime, spec, plan.support, full, region_cap);
  report.gap_is_one.pass = report.gap == 1;
  report.gap_is_one.detail = "proxy_gap=" + to_string(report.gap);

  report.all_pass = report.on_support_agreement.pass && report.proxy_verdict_parity.pass &&
                    report.exact_violation_off_support.pass && report.gap_is_one.pass;
  return report;
}

}  // namespace relucert
