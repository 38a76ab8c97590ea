// SPDX-License-Identifier: Apache-2.0
#include "relucert/proxy.hpp"

#include "relucert/error.hpp"
#include "relucert/prng.hpp"

namespace relucert {

Rational proxy_score(const Network& net, const LinearSpec& spec, const EvalSupport& support) {
  if (support.points.empty()) throw PreconditionError("proxy_score: empty evaluation support");
  if (static_cast<int>(spec.c.size()) != net.output_dim())
    throw DimensionError("proxy_score: spec length mismatch");
  std::uint64_t passing = 0;
  for (const RatVec& x : support.points)
    if (dot(spec.c, forward(net, x)) <= spec.b) ++passing;
  return Rational(passing) / Rational(support.points.size());
}

ProxyVerdict proxy_verdict(const Rational& score, const Rational& tau) {
  if (score < 0 || score > 1 || tau < 0 || tau > 1)
    throw FormatError("proxy_verdict: score and tau must lie in [0,1]");
  return score >= tau ? ProxyVerdict::Aligned : ProxyVerdict::Unaligned;
}

ProxyResult proxy_evaluate(const Network& net, const LinearSpec& spec, const EvalSupport& support,
                           const Rational& tau) {
  Rational score = proxy_score(net, spec, support);
  return ProxyResult{score, tau, proxy_verdict(score, tau)};
}

Rational proxy_gap(const Network& net, const LinearSpec& spec, const EvalSupport& support,
                   const Domain& dom, std::uint64_t region_cap) {
  const Rational score = proxy_score(net, spec, support);
  const Verdict exact = verify_full(net, spec, dom, region_cap);
  const Rational astar = exact.kind == VerdictKind::Certified ? 1 : 0;
  Rational gap = astar - score;
  return gap < 0 ? Rational(-gap) : gap;
}

EvalSupport make_seeded_support(const Box& box, int count, std::uint64_t seed) {
  if (count <= 0) throw FormatError("make_seeded_support: count must be positive");
  EvalSupport support;
  support.seed = seed;
  SplitMix rng(seed);
  const int n = static_cast<int>(box.lower.size());
  for (int i = 0; i < count; ++i) {
    RatVec x(n);
    for (int j = 0; j < n; ++j) {
      const Rational frac(static_cast<long long>(rng.below(4093)), 4093);
      x[j] = box.lower[j] + frac * (box.upper[j] - box.lower[j]);
    }
    support.points.push_back(std::move(x));
  }
  return support;
}

}  // namespace relucert
