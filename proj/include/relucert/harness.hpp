// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "relucert/bounded.hpp"
#include "relucert/generate.hpp"
#include "relucert/io.hpp"
#include "relucert/pwl.hpp"
#include "relucert/symmetry.hpp"

namespace relucert {

struct TrilemmaConfig {
  std::uint64_t seed = 42;
  std::uint64_t region_cap = kDefaultRegionCap;
  Rational delta = 0;  // stated tolerance of the trilemma properties; 0 keeps A* an indicator
  Rational tau = 1;
  int grid_density = 100000;
  std::vector<int> depth_sweep = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::string output_dir = "out";
  int st_pairs = 100;
  int st_probes = 100;
  int gt_triples = 50;
};

TrilemmaConfig config_from_json(const Json& j);
Json config_to_json(const TrilemmaConfig& cfg);

// ---- track 1: exact verification work explodes with depth -----------------

struct SgRow {
  int depth = 0;
  int neurons = 0;
  std::uint64_t regions = 0;
  Rational montufar_ref;
  std::uint64_t lp_calls = 0;
  double exact_ms = 0;
  double ibp_ns = 0;
  bool capped = false;
};

struct SgTrack {
  std::vector<SgRow> rows;
  bool region_counts_match = false;  // regions == 2^depth on every row
  bool lp_calls_double = false;      // lp_calls at least doubles per step
  bool ibp_linear = false;           // ibp time bounded by 8x linear in neurons
  bool truncated = false;            // sweep stopped at the region cap

  bool pass() const { return region_counts_match && lp_calls_double && ibp_linear; }
};

SgTrack experiment_sg_not_t(const TrilemmaConfig& cfg);

// ---- track 2: symmetric partners defeat representation-sensitive objectives

struct StPairResult {
  std::uint64_t pair_seed = 0;
  std::vector<SymmetryTransform> transforms;
  bool equivalence_certified = false;
  bool rep_distance_positive = false;  // at every generic probe
  int astar_net = -1;
  int astar_partner = -1;
  bool astar_differs = false;
  bool verdicts_identical = false;  // exact, box-exact, ibp, proxy all agree across the pair
  VerdictKind exact_kind = VerdictKind::Unknown;

  bool pass() const {
    return equivalence_certified && rep_distance_positive && astar_differs && verdicts_identical;
  }
};

struct GeneralityExhibit {
  bool box_certified = false;
  bool witness_found = false;
  RatVec witness;

  bool pass() const { return box_certified && witness_found; }
};

struct StTrack {
  std::vector<StPairResult> pairs;
  GeneralityExhibit exhibit;
  bool identity_control_ok = false;  // identity transform leaves A* unchanged

  bool pass() const {
    for (const StPairResult& p : pairs)
      if (!p.pass()) return false;
    return !pairs.empty() && exhibit.pass() && identity_control_ok;
  }
};

StTrack experiment_st_not_g(const TrilemmaConfig& cfg);

// ---- track 3: finite-support proxies certify refuted networks --------------

struct GtTrack {
  std::vector<DemonstrationReport> reports;
  std::vector<int> support_sizes;
  int passes = 0;

  bool pass() const { return !reports.empty() && passes == static_cast<int>(reports.size()); }
};

GtTrack experiment_gt_not_s(const TrilemmaConfig& cfg);

// ---- combined run ----------------------------------------------------------

struct TrilemmaReport {
  TrilemmaConfig config;
  SgTrack sg;
  StTrack st;
  GtTrack gt;
  std::string sg_error, st_error, gt_error;  // a failed track never aborts the others
  std::string compiler;
  std::string timestamp;

  bool all_pass() const {
    return sg_error.empty() && st_error.empty() && gt_error.empty() && sg.pass() && st.pass() &&
           gt.pass();
  }
  bool any_capped() const { return sg.truncated; }
};

TrilemmaReport run_trilemma_suite(const TrilemmaConfig& cfg);

Json report_to_json(const TrilemmaReport& report);

/// Writes trilemma_report.json plus sg_scaling.csv, st_pairs.csv,
/// gt_reports.csv and summary.csv into the directory (created if needed).
void write_report_files(const TrilemmaReport& report, const std::string& dir);

}  // namespace relucert
