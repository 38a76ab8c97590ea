// SPDX-License-Identifier: Apache-2.0
#include "relucert/region.hpp"

#include <deque>
#include <set>
#include <string>

#include "relucert/error.hpp"

namespace relucert {

int domain_dimension(const Domain& dom) {
  if (const auto* full = std::get_if<FullSpace>(&dom)) return full->dimension;
  return static_cast<int>(std::get<Box>(dom).lower.size());
}

Box make_box(RatVec lower, RatVec upper) {
  if (lower.size() != upper.size() || lower.empty())
    throw DimensionError("box: lower/upper length mismatch");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (lower[i] > upper[i]) throw FormatError("box: lower > upper in coordinate " + std::to_string(i));
  return Box{std::move(lower), std::move(upper)};
}

namespace {

void append_domain_rows(ConstraintSystem& cs, const Domain& dom) {
  const auto* box = std::get_if<Box>(&dom);
  if (!box) return;
  const int n = static_cast<int>(box->lower.size());
  for (int j = 0; j < n; ++j) {
    RatVec up(n, 0), down(n, 0);
    up[j] = 1;
    down[j] = -1;
    cs.add(std::move(up), box->upper[j]);
    cs.add(std::move(down), -box->lower[j]);
  }
}

struct StrictRow {
  const NeuronForm* form;
  bool active;  // bit value: true wants z >= t, false wants z <= -t
};

// 1-D specialization: intersect open pattern half-lines with the closed domain
// interval; nonempty iff an interior point exists.
std::optional<RatVec> witness_1d(const std::vector<StrictRow>& strict, const Domain& dom) {
  bool has_lo = false, has_hi = false, lo_open = false, hi_open = false;
  Rational lo = 0, hi = 0;
  auto tighten_lo = [&](const Rational& v, bool open) {
    if (!has_lo || v > lo) {
      lo = v;
      lo_open = open;
      has_lo = true;
    } else if (v == lo && open) {
      lo_open = true;
    }
  };
  auto tighten_hi = [&](const Rational& v, bool open) {
    if (!has_hi || v < hi) {
      hi = v;
      hi_open = open;
      has_hi = true;
    } else if (v == hi && open) {
      hi_open = true;
    }
  };
  for (const StrictRow& row : strict) {
    const Rational& k = row.form->coeff[0];
    const Rational bound = -row.form->constant / k;
    // active: k*x + c > 0 ; inactive: k*x + c < 0
    const bool lower_side = (k > 0) == row.active;
    if (lower_side)
      tighten_lo(bound, true);
    else
      tighten_hi(bound, true);
  }
  if (const auto* box = std::get_if<Box>(&dom)) {
    tighten_lo(box->lower[0], false);
    tighten_hi(box->upper[0], false);
  }
  if (has_lo && has_hi) {
    if (lo > hi) return std::nullopt;
    if (lo == hi) {
      if (lo_open || hi_open) return std::nullopt;
      return RatVec{lo};
    }
    return RatVec{(lo + hi) / 2};
  }
  if (has_lo) return RatVec{lo + 1};
  if (has_hi) return RatVec{hi - 1};
  return RatVec{Rational(0)};
}

// n-D: maximize a uniform margin t subject to the strict rows and the domain;
// the pattern is a region iff the optimum is strictly positive.
std::optional<RatVec> witness_nd(const std::vector<StrictRow>& strict, const Domain& dom, int n) {
  ConstraintSystem cs;
  cs.dimension = n + 1;  // x_0..x_{n-1}, t
  for (const StrictRow& row : strict) {
    RatVec a(n + 1, 0);
    Rational b;
    if (row.active) {
      // z >= t  <=>  -a.x + t <= c
      for (int j = 0; j < n; ++j) a[j] = -row.form->coeff[j];
      b = row.form->constant;
    } else {
      // z <= -t  <=>  a.x + t <= -c
      for (int j = 0; j < n; ++j) a[j] = row.form->coeff[j];
      b = -row.form->constant;
    }
    a[n] = 1;
    cs.add(std::move(a), std::move(b));
  }
  if (const auto* box = std::get_if<Box>(&dom)) {
    for (int j = 0; j < n; ++j) {
      RatVec up(n + 1, 0), down(n + 1, 0);
      up[j] = 1;
      down[j] = -1;
      cs.add(std::move(up), box->upper[j]);
      cs.add(std::move(down), -box->lower[j]);
    }
  }
  RatVec cap_row(n + 1, 0);
  cap_row[n] = 1;
  cs.add(std::move(cap_row), Rational(1));

  RatVec objective(n + 1, 0);
  objective[n] = 1;
  LPOutcome out = solve_max(objective, cs);
  const auto* opt = std::get_if<LPOptimal>(&out);
  if (!opt || opt->value <= 0) return std::nullopt;
  RatVec x(opt->point.begin(), opt->point.begin() + n);
  return x;
}

}  // namespace

namespace detail {

std::optional<RatVec> pattern_witness(const Network& net, const ActivationPattern& p,
                                      const Domain& dom, EnumStats* stats) {
  const int n = net.input_dim();
  std::vector<NeuronForm> forms = pre_activation_forms(net, p);
  std::vector<StrictRow> strict;
  strict.reserve(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].is_constant()) {
      const bool expected = forms[i].constant > 0;
      if (p.bits[i] != expected) return std::nullopt;
      continue;  // sign is fixed everywhere; no strictness needed
    }
    strict.push_back(StrictRow{&forms[i], static_cast<bool>(p.bits[i])});
  }
  if (stats) ++stats->lp_calls;
  if (strict.empty()) {
    if (const auto* box = std::get_if<Box>(&dom)) {
      RatVec center(n);
      for (int j = 0; j < n; ++j) center[j] = (box->lower[j] + box->upper[j]) / 2;
      return center;
    }
    return RatVec(n, 0);
  }
  if (n == 1) return witness_1d(strict, dom);
  return witness_nd(strict, dom, n);
}

ConstraintSystem closed_region_system(const Network& net, const ActivationPattern& p,
                                      const Domain& dom) {
  const int n = net.input_dim();
  ConstraintSystem cs;
  cs.dimension = n;
  std::vector<NeuronForm> forms = pre_activation_forms(net, p);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (p.bits[i]) {
      RatVec a(n);
      for (int j = 0; j < n; ++j) a[j] = -forms[i].coeff[j];
      cs.add(std::move(a), forms[i].constant);  // z >= 0
    } else {
      cs.add(forms[i].coeff, -forms[i].constant);  // z <= 0
    }
  }
  append_domain_rows(cs, dom);
  return cs;
}

}  // namespace detail

namespace {

Region build_region(const Network& net, ActivationPattern p, const Domain& dom, RatVec witness) {
  ConstraintSystem cs = detail::closed_region_system(net, p, dom);
  AffineMap affine = affine_map_for_pattern(net, p);
  return Region{std::move(p), std::move(cs), std::move(affine), std::move(witness)};
}

// Deterministic probe sequence for BFS seeding. Ties (a probe hitting a region
// boundary) make a probe's own pattern strictly infeasible, so several probes
// are tried.
std::vector<RatVec> seed_probes(const Network& net, const Domain& dom) {
  const int n = net.input_dim();
  RatVec lo(n, Rational(-16)), hi(n, Rational(16));
  if (const auto* box = std::get_if<Box>(&dom)) {
    lo = box->lower;
    hi = box->upper;
  }
  std::vector<RatVec> probes;
  RatVec center(n);
  for (int j = 0; j < n; ++j) center[j] = (lo[j] + hi[j]) / 2;
  probes.push_back(center);
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int k = 0; k < 63; ++k) {
    RatVec x(n);
    for (int j = 0; j < n; ++j) {
      const Rational frac(static_cast<long long>(next() % 257), 257);
      x[j] = lo[j] + frac * (hi[j] - lo[j]);
    }
    probes.push_back(std::move(x));
  }
  return probes;
}

}  // namespace

void for_each_region(const Network& net, const Domain& dom,
                     const std::function<bool(const Region&)>& fn, std::uint64_t cap,
                     EnumStats* stats) {
  if (net.input_dim() != domain_dimension(dom))
    throw DimensionError("enumerate_regions: domain dimension does not match input_dim");
  EnumStats local;
  EnumStats* st = stats ? stats : &local;
  const int nbits = net.hidden_neuron_count();

  if (nbits == 0) {
    ActivationPattern empty;
    auto witness = detail::pattern_witness(net, empty, dom, st);
    ++st->patterns_tested;
    if (witness) fn(build_region(net, empty, dom, std::move(*witness)));
    return;
  }

  ActivationPattern seed;
  std::optional<RatVec> seed_witness;
  std::set<ActivationPattern> visited;
  for (const RatVec& probe : seed_probes(net, dom)) {
    ActivationPattern p = activation_pattern(net, probe);
    if (visited.count(p)) continue;
    visited.insert(p);
    ++st->patterns_tested;
    seed_witness = detail::pattern_witness(net, p, dom, st);
    if (seed_witness) {
      seed = std::move(p);
      break;
    }
  }
  if (!seed_witness)
    throw FormatError("enumerate_regions: no feasible seed pattern found (degenerate network/domain)");

  std::uint64_t found = 0;
  std::deque<ActivationPattern> queue;
  queue.push_back(seed);
  ++found;
  if (!fn(build_region(net, seed, dom, std::move(*seed_witness)))) return;

  while (!queue.empty()) {
    ActivationPattern current = std::move(queue.front());
    queue.pop_front();
    for (int k = 0; k < nbits; ++k) {
      ActivationPattern neighbor = current;
      neighbor.bits[k] = !neighbor.bits[k];
      if (visited.count(neighbor)) continue;
      visited.insert(neighbor);
      ++st->patterns_tested;
      auto witness = detail::pattern_witness(net, neighbor, dom, st);
      if (!witness) continue;
      if (++found > cap) throw RegionCapError(cap, found);
      queue.push_back(neighbor);
      if (!fn(build_region(net, neighbor, dom, std::move(*witness)))) return;
    }
  }
}

std::vector<Region> enumerate_regions(const Network& net, const Domain& dom, std::uint64_t cap,
                                      EnumStats* stats) {
  std::vector<Region> regions;
  for_each_region(
      net, dom,
      [&regions](const Region& r) {
        regions.push_back(r);
        return true;
      },
      cap, stats);
  return regions;
}

std::uint64_t count_regions(const Network& net, const Domain& dom, std::uint64_t cap,
                            EnumStats* stats) {
  std::uint64_t count = 0;
  for_each_region(
      net, dom,
      [&count](const Region&) {
        ++count;
        return true;
      },
      cap, stats);
  return count;
}

std::vector<Region> enumerate_regions_exhaustive(const Network& net, const Domain& dom,
                                                 int oracle_cap, EnumStats* stats) {
  if (net.input_dim() != domain_dimension(dom))
    throw DimensionError("enumerate_regions_exhaustive: domain dimension mismatch");
  const int nbits = net.hidden_neuron_count();
  if (nbits > oracle_cap)
    throw RegionCapError(static_cast<std::uint64_t>(oracle_cap),
                         static_cast<std::uint64_t>(nbits));
  EnumStats local;
  EnumStats* st = stats ? stats : &local;
  std::vector<Region> regions;
  const std::uint64_t total = std::uint64_t(1) << nbits;
  for (std::uint64_t code = 0; code < total; ++code) {
    ActivationPattern p;
    p.bits.resize(nbits);
    for (int k = 0; k < nbits; ++k) p.bits[k] = (code >> k) & 1;
    ++st->patterns_tested;
    auto witness = detail::pattern_witness(net, p, dom, st);
    if (witness) regions.push_back(build_region(net, std::move(p), dom, std::move(*witness)));
  }
  return regions;
}

Rational montufar_expression(int n, int L, int d) {
  if (n < 1 || L < 1 || d < 1) throw DimensionError("montufar_expression: arguments must be >= 1");
  const Rational base = Rational(n) / Rational(L);
  const long long exponent = static_cast<long long>(L) * (d - 1);
  Rational result = 1;
  for (long long i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace relucert
