// SPDX-License-Identifier: Apache-2.0
#include "relucert/harness.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "relucert/error.hpp"

namespace relucert {

TrilemmaConfig config_from_json(const Json& j) {
  TrilemmaConfig cfg;
  if (j.contains("seed")) cfg.seed = static_cast<std::uint64_t>(int_from_json(j.at("seed")));
  if (j.contains("region_cap"))
    cfg.region_cap = static_cast<std::uint64_t>(
        numerator(rational_from_json(j.at("region_cap"))).convert_to<unsigned long long>());
  if (j.contains("delta")) cfg.delta = rational_from_json(j.at("delta"));
  if (j.contains("tau")) cfg.tau = rational_from_json(j.at("tau"));
  if (j.contains("grid_density")) cfg.grid_density = int_from_json(j.at("grid_density"));
  if (j.contains("depth_sweep")) {
    cfg.depth_sweep.clear();
    for (const Json& d : j.at("depth_sweep")) cfg.depth_sweep.push_back(int_from_json(d));
  }
  if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("st_pairs")) cfg.st_pairs = int_from_json(j.at("st_pairs"));
  if (j.contains("st_probes")) cfg.st_probes = int_from_json(j.at("st_probes"));
  if (j.contains("gt_triples")) cfg.gt_triples = int_from_json(j.at("gt_triples"));

  if (cfg.region_cap == 0 || cfg.grid_density <= 0 || cfg.st_pairs <= 0 || cfg.st_probes <= 0 ||
      cfg.gt_triples <= 0)
    throw FormatError("config: caps and densities must be positive");
  if (cfg.delta < 0 || cfg.delta >= 1) throw FormatError("config: delta must lie in [0,1)");
  if (cfg.tau < 0 || cfg.tau > 1) throw FormatError("config: tau must lie in [0,1]");
  if (cfg.depth_sweep.empty()) throw FormatError("config: depth_sweep must be nonempty");
  for (std::size_t i = 0; i < cfg.depth_sweep.size(); ++i) {
    if (cfg.depth_sweep[i] < 1 || (i > 0 && cfg.depth_sweep[i] <= cfg.depth_sweep[i - 1]))
      throw FormatError("config: depth_sweep must be increasing and >= 1");
  }
  return cfg;
}

Json config_to_json(const TrilemmaConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  j["region_cap"] = cfg.region_cap;
  j["delta"] = to_string(cfg.delta);
  j["tau"] = to_string(cfg.tau);
  j["grid_density"] = cfg.grid_density;
  j["depth_sweep"] = cfg.depth_sweep;
  j["output_dir"] = cfg.output_dir;
  j["st_pairs"] = cfg.st_pairs;
  j["st_probes"] = cfg.st_probes;
  j["gt_triples"] = cfg.gt_triples;
  return j;
}

// ---------------------------------------------------------------------------
// Track 1 (holds S+G, fails T)

namespace {

double time_ibp_ns(const Network& net, const LinearSpec& spec, const Box& box) {
  using clock = std::chrono::steady_clock;
  // accumulate enough repetitions for a stable mean
  const auto start = clock::now();
  std::uint64_t reps = 0;
  for (;;) {
    verify_bounded(net, spec, box, BoundedMethod::Ibp);
    ++reps;
    const auto elapsed = clock::now() - start;
    if (reps >= 16 && elapsed >= std::chrono::milliseconds(5))
      return static_cast<double>(
                 std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count()) /
             static_cast<double>(reps);
  }
}

}  // namespace

SgTrack experiment_sg_not_t(const TrilemmaConfig& cfg) {
  SgTrack track;
  const Box unit = make_box({Rational(0)}, {Rational(1)});
  LinearSpec spec;
  spec.c = {Rational(1)};
  spec.b = 1;  // the tent composition maps [0,1] onto [0,1]

  for (int depth : cfg.depth_sweep) {
    Network net = sawtooth_network(depth);
    SgRow row;
    row.depth = depth;
    row.neurons = net.hidden_neuron_count();
    row.montufar_ref = montufar_expression(row.neurons, depth, 2);
    try {
      Verdict v = verify_full(net, spec, Domain(unit), cfg.region_cap);
      row.regions = v.stats.regions_examined;
      row.lp_calls = v.stats.lp_calls;
      row.exact_ms =
          std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(v.stats.elapsed)
              .count();
      row.ibp_ns = time_ibp_ns(net, spec, unit);
      track.rows.push_back(std::move(row));
    } catch (const RegionCapError&) {
      row.capped = true;
      track.rows.push_back(std::move(row));
      track.truncated = true;
      break;
    }
  }

  std::vector<const SgRow*> ok;
  for (const SgRow& row : track.rows)
    if (!row.capped) ok.push_back(&row);
  track.region_counts_match = !ok.empty();
  for (const SgRow* row : ok)
    if (row->regions != (std::uint64_t(1) << row->depth)) track.region_counts_match = false;
  track.lp_calls_double = !ok.empty();
  for (std::size_t i = 1; i < ok.size(); ++i)
    if (ok[i]->lp_calls < 2 * ok[i - 1]->lp_calls) track.lp_calls_double = false;
  track.ibp_linear = !ok.empty();
  for (const SgRow* row : ok) {
    // at most 8x the linear-in-neurons growth from the first row
    if (row->ibp_ns * ok.front()->neurons > 8.0 * ok.front()->ibp_ns * row->neurons)
      track.ibp_linear = false;
  }
  return track;
}

// ---------------------------------------------------------------------------
// Track 2 (holds S+T, fails G)

namespace {

NetGenOptions st_net_options(SplitMix& rng) {
  NetGenOptions opts;
  opts.head_canonical = true;
  if (rng.below(2) == 0) {
    opts.input_dim = 1;
    static const std::vector<std::vector<int>> shapes = {{2}, {3}, {2, 2}, {3, 2}};
    opts.hidden_widths = shapes[rng.below(shapes.size())];
  } else {
    opts.input_dim = 2;
    static const std::vector<std::vector<int>> shapes = {{2}, {3}, {2, 2}};
    opts.hidden_widths = shapes[rng.below(shapes.size())];
  }
  return opts;
}

}  // namespace

StTrack experiment_st_not_g(const TrilemmaConfig& cfg) {
  StTrack track;
  SplitMix rng(cfg.seed ^ 0x5757575757575757ull);

  for (int p = 0; p < cfg.st_pairs; ++p) {
    StPairResult result;
    result.pair_seed = rng.next();
    SplitMix pair_rng(result.pair_seed);
    const NetGenOptions opts = st_net_options(pair_rng);
    const Network net = random_network(pair_rng, opts);
    SymmetricPartner partner = random_symmetric_partner(net, pair_rng.next());
    result.transforms = partner.transforms;
    const Domain full = FullSpace{net.input_dim()};

    auto [equal, counterexample] = equivalence_check(net, partner.network, full, cfg.region_cap);
    result.equivalence_certified = equal && !counterexample;

    result.rep_distance_positive = true;
    int found = 0;
    for (int tries = 0; tries < cfg.st_probes * 50 && found < cfg.st_probes; ++tries) {
      RatVec probe(net.input_dim());
      for (Rational& c : probe) c = Rational(pair_rng.range(-128, 128), 16);
      if (!all_preactivations_nonzero(net, probe)) continue;
      if (!all_preactivations_nonzero(partner.network, probe)) continue;
      ++found;
      if (representation_distance(net, partner.network, probe) == 0)
        result.rep_distance_positive = false;
    }
    if (found < cfg.st_probes) result.rep_distance_positive = false;

    result.astar_net = synthetic_alignment_objective(net);
    result.astar_partner = synthetic_alignment_objective(partner.network);
    result.astar_differs = result.astar_net != result.astar_partner;

    // every verifier regime must hand the pair identical verdicts
    const Box box = random_box(pair_rng, net.input_dim());
    const LinearSpec spec = random_spec(pair_rng, net, box);
    const EvalSupport support = make_seeded_support(box, 8, pair_rng.next());
    Verdict e1 = verify_full(net, spec, full, cfg.region_cap);
    Verdict e2 = verify_full(partner.network, spec, full, cfg.region_cap);
    Verdict x1 = verify_bounded(net, spec, box, BoundedMethod::ExactOnBox, cfg.region_cap);
    Verdict x2 = verify_bounded(partner.network, spec, box, BoundedMethod::ExactOnBox, cfg.region_cap);
    Verdict i1 = verify_bounded(net, spec, box, BoundedMethod::Ibp);
    Verdict i2 = verify_bounded(partner.network, spec, box, BoundedMethod::Ibp);
    const Rational s1 = proxy_score(net, spec, support);
    const Rational s2 = proxy_score(partner.network, spec, support);
    result.exact_kind = e1.kind;
    result.verdicts_identical = e1.kind == e2.kind && x1.kind == x2.kind && i1.kind == i2.kind &&
                                s1 == s2 &&
                                proxy_verdict(s1, cfg.tau) == proxy_verdict(s2, cfg.tau);
    track.pairs.push_back(std::move(result));
  }

  // identity-transform control: nothing may change
  {
    SplitMix control_rng(cfg.seed ^ 0x1d1d1d1d1d1d1d1dull);
    const Network net = random_network(control_rng, st_net_options(control_rng));
    std::vector<int> identity(net.hidden_widths()[0]);
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
    const Network same = apply_transform(net, Permutation{0, identity});
    track.identity_control_ok =
        synthetic_alignment_objective(net) == synthetic_alignment_objective(same) &&
        network_to_json(net) == network_to_json(same);
  }

  // bounded-verifier exhibit: certified on the box, violated just outside it
  {
    SplitMix ex_rng(cfg.seed ^ 0xababababababababull);
    const Rational threshold(ex_rng.range(2, 6), 2);  // >= 1
    Network net(1, {Layer{{{Rational(1)}}, {-threshold}}, Layer{{{Rational(1)}}, {Rational(0)}}});
    const Box box = make_box({Rational(-1)}, {Rational(1)});
    LinearSpec spec;
    spec.c = {Rational(1)};
    spec.b = 0;
    Verdict boxed = verify_bounded(net, spec, box, BoundedMethod::ExactOnBox, cfg.region_cap);
    track.exhibit.box_certified = boxed.kind == VerdictKind::Certified;
    if (track.exhibit.box_certified) {
      auto witness = generality_gap_witness(net, spec, box, cfg.region_cap);
      if (witness) {
        track.exhibit.witness_found = true;
        track.exhibit.witness = *witness;
      }
    }
  }
  return track;
}

// ---------------------------------------------------------------------------
// Track 3 (holds G+T, fails S)

namespace {

Rational jitter(SplitMix& rng) { return Rational(rng.range(-4, 4), 16); }

struct GtInstance {
  Network theta1;
  Network theta2;
  PatchPlan plan;
  LinearSpec spec;
};

GtInstance make_gt_instance(SplitMix& rng, int support_size) {
  static const Rational cs[] = {Rational(1), Rational(-1), Rational(2), Rational(-1, 2)};
  static const Rational bs[] = {Rational(0), Rational(1), Rational(-1)};
  LinearSpec spec;
  spec.c = {cs[rng.below(4)]};
  spec.b = bs[rng.below(3)];
  const Rational& c = spec.c[0];

  EvalSupport support;
  std::vector<Rational> pts;
  for (int k = 0; k < support_size; ++k) {
    Rational s = Rational(2 * k - support_size) + jitter(rng);
    pts.push_back(s);
    support.points.push_back({s});
  }
  PatchPlan plan = make_patch_plan(support, Rational(1, 4));

  // theta1: spec satisfied everywhere with margin >= 1; flat tails
  auto passing_value = [&](SplitMix& r) {
    return (spec.b - 1 - Rational(static_cast<long long>(r.below(5)), 2)) / c;
  };
  {
    std::vector<Rational> bps = pts;
    bps.push_back(pts.back() + 1);  // extra kink beyond the support
    std::vector<Rational> vals;
    for (std::size_t i = 0; i < bps.size(); ++i) vals.push_back(passing_value(rng));
    GtInstance instance{
        compile_pwl_to_network(PWLFunction(bps, vals, Rational(0), Rational(0))),
        compile_pwl_to_network(PWLFunction({Rational(0)}, {passing_value(rng)}, Rational(0), Rational(0))),
        std::move(plan), spec};

    // theta2: flat passing baseline with one violating bump far from every neighborhood
    const Rational z = pts.back() + 2 + jitter(rng);
    const Rational violating = (spec.b + 1 + Rational(static_cast<long long>(rng.below(5)), 2)) / c;
    const Rational baseline = passing_value(rng);
    instance.theta2 = compile_pwl_to_network(PWLFunction(
        {z - Rational(1, 2), z, z + Rational(1, 2)}, {baseline, violating, baseline}, Rational(0),
        Rational(0)));
    return instance;
  }
}

}  // namespace

GtTrack experiment_gt_not_s(const TrilemmaConfig& cfg) {
  GtTrack track;
  SplitMix rng(cfg.seed ^ 0x6767676767676767ull);
  static const int sizes[] = {1, 4, 16};
  for (int i = 0; i < cfg.gt_triples; ++i) {
    const int size = sizes[i % 3];
    std::string last_error;
    bool done = false;
    for (int attempt = 0; attempt < 3 && !done; ++attempt) {
      GtInstance instance = make_gt_instance(rng, size);
      try {
        DemonstrationReport report = build_unsound_pair(instance.theta1, instance.theta2,
                                                        instance.plan, instance.spec, cfg.tau,
                                                        cfg.region_cap);
        if (report.all_pass) ++track.passes;
        track.reports.push_back(std::move(report));
        track.support_sizes.push_back(size);
        done = true;
      } catch (const PreconditionError& e) {
        last_error = e.what();
      }
    }
    if (!done)
      throw PreconditionError("gt track: instance generation failed after retries: " + last_error);
  }
  return track;
}

// ---------------------------------------------------------------------------

TrilemmaReport run_trilemma_suite(const TrilemmaConfig& cfg) {
  TrilemmaReport report;
  report.config = cfg;
  report.compiler = __VERSION__;
  {
    const std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    report.timestamp = buf;
  }
  try {
    report.sg = experiment_sg_not_t(cfg);
  } catch (const std::exception& e) {
    report.sg_error = e.what();
  }
  try {
    report.st = experiment_st_not_g(cfg);
  } catch (const std::exception& e) {
    report.st_error = e.what();
  }
  try {
    report.gt = experiment_gt_not_s(cfg);
  } catch (const std::exception& e) {
    report.gt_error = e.what();
  }
  return report;
}

namespace {

Json sg_to_json(const SgTrack& track) {
  Json j;
  Json rows = Json::array();
  for (const SgRow& row : track.rows) {
    Json r;
    r["depth"] = row.depth;
    r["hidden_neurons"] = row.neurons;
    r["regions"] = row.regions;
    r["montufar_ref"] = to_string(row.montufar_ref);
    r["lp_calls"] = row.lp_calls;
    r["exact_ms"] = row.exact_ms;
    r["ibp_ns"] = row.ibp_ns;
    r["capped"] = row.capped;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["region_counts_match"] = track.region_counts_match;
  j["lp_calls_double"] = track.lp_calls_double;
  j["ibp_linear"] = track.ibp_linear;
  j["truncated"] = track.truncated;
  j["pass"] = track.pass();
  return j;
}

Json st_to_json(const StTrack& track) {
  Json j;
  Json pairs = Json::array();
  for (const StPairResult& p : track.pairs) {
    Json r;
    r["seed"] = p.pair_seed;
    Json transforms = Json::array();
    for (const SymmetryTransform& t : p.transforms) transforms.push_back(transform_to_json(t));
    r["transforms"] = std::move(transforms);
    r["equivalence_certified"] = p.equivalence_certified;
    r["rep_distance_positive"] = p.rep_distance_positive;
    r["astar_net"] = p.astar_net;
    r["astar_partner"] = p.astar_partner;
    r["astar_differs"] = p.astar_differs;
    r["verdicts_identical"] = p.verdicts_identical;
    r["exact_verdict"] = to_string(p.exact_kind);
    r["exact_verdict_binary"] = to_string(to_binary(p.exact_kind));
    r["pass"] = p.pass();
    pairs.push_back(std::move(r));
  }
  j["pairs"] = std::move(pairs);
  Json ex;
  ex["box_certified"] = track.exhibit.box_certified;
  ex["witness_found"] = track.exhibit.witness_found;
  if (track.exhibit.witness_found) {
    Json w = Json::array();
    for (const Rational& v : track.exhibit.witness) w.push_back(to_string(v));
    ex["witness"] = std::move(w);
  }
  ex["pass"] = track.exhibit.pass();
  j["generality_exhibit"] = std::move(ex);
  j["identity_control_ok"] = track.identity_control_ok;
  j["pass"] = track.pass();
  return j;
}

Json gt_to_json(const GtTrack& track) {
  Json j;
  Json reports = Json::array();
  for (std::size_t i = 0; i < track.reports.size(); ++i) {
    Json r = demonstration_report_to_json(track.reports[i]);
    r["support_size"] = track.support_sizes[i];
    reports.push_back(std::move(r));
  }
  j["reports"] = std::move(reports);
  j["passes"] = track.passes;
  j["total"] = track.reports.size();
  j["pass"] = track.pass();
  return j;
}

}  // namespace

Json report_to_json(const TrilemmaReport& report) {
  Json j;
  j["config"] = config_to_json(report.config);
  Json env;
  env["compiler"] = report.compiler;
  env["timestamp"] = report.timestamp;
  j["environment"] = std::move(env);
  j["sg_not_t"] = sg_to_json(report.sg);
  if (!report.sg_error.empty()) j["sg_not_t"]["error"] = report.sg_error;
  j["st_not_g"] = st_to_json(report.st);
  if (!report.st_error.empty()) j["st_not_g"]["error"] = report.st_error;
  j["gt_not_s"] = gt_to_json(report.gt);
  if (!report.gt_error.empty()) j["gt_not_s"]["error"] = report.gt_error;

  Json summary = Json::array();
  auto add_row = [&summary](const char* held, const char* fails, const char* evidence, bool pass) {
    Json row;
    row["pair_held"] = held;
    row["fails"] = fails;
    row["evidence"] = evidence;
    row["pass"] = pass;
    summary.push_back(std::move(row));
  };
  if (report.sg_error.empty())
    add_row("S+G", "T", "sg_not_t: 2^L regions, LP calls double per depth step, IBP time stays linear",
            report.sg.pass());
  if (report.st_error.empty())
    add_row("S+T", "G",
            "st_not_g: certified-equivalent partners with differing A*, identical verdicts; box "
            "certificate silent outside the box",
            report.st.pass());
  if (report.gt_error.empty())
    add_row("G+T", "S", "gt_not_s: proxy-aligned diagonal networks refuted exactly, proxy gap 1",
            report.gt.pass());
  j["summary"] = std::move(summary);
  j["all_pass"] = report.all_pass();
  return j;
}

void write_report_files(const TrilemmaReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_json_file(dir + "/trilemma_report.json", report_to_json(report));

  {
    std::ofstream csv(dir + "/sg_scaling.csv");
    csv << "depth,hidden_neurons,regions,montufar_ref,lp_calls,exact_ms,ibp_ns,capped\n";
    for (const SgRow& row : report.sg.rows)
      csv << row.depth << ',' << row.neurons << ',' << row.regions << ','
          << to_string(row.montufar_ref) << ',' << row.lp_calls << ',' << row.exact_ms << ','
          << row.ibp_ns << ',' << (row.capped ? 1 : 0) << '\n';
  }
  {
    std::ofstream csv(dir + "/st_pairs.csv");
    csv << "pair,seed,equivalence_certified,rep_distance_positive,astar_net,astar_partner,"
           "astar_differs,verdicts_identical,pass\n";
    for (std::size_t i = 0; i < report.st.pairs.size(); ++i) {
      const StPairResult& p = report.st.pairs[i];
      csv << i << ',' << p.pair_seed << ',' << p.equivalence_certified << ','
          << p.rep_distance_positive << ',' << p.astar_net << ',' << p.astar_partner << ','
          << p.astar_differs << ',' << p.verdicts_identical << ',' << p.pass() << '\n';
    }
  }
  {
    std::ofstream csv(dir + "/gt_reports.csv");
    csv << "triple,support_size,score_theta1,score_theta_prime,proxy_gap,all_pass\n";
    for (std::size_t i = 0; i < report.gt.reports.size(); ++i) {
      const DemonstrationReport& r = report.gt.reports[i];
      csv << i << ',' << report.gt.support_sizes[i] << ',' << to_string(r.score_theta1) << ','
          << to_string(r.score_prime) << ',' << to_string(r.gap) << ',' << r.all_pass << '\n';
    }
  }
  {
    std::ofstream csv(dir + "/summary.csv");
    csv << "pair_held,fails,pass\n";
    if (report.sg_error.empty()) csv << "S+G,T," << report.sg.pass() << '\n';
    if (report.st_error.empty()) csv << "S+T,G," << report.st.pass() << '\n';
    if (report.gt_error.empty()) csv << "G+T,S," << report.gt.pass() << '\n';
  }
}

}  // namespace relucert
