// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "relucert/harness.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitFormat = 2;
constexpr int kExitCap = 3;

using namespace relucert;

void print_verdict(const Verdict& v) {
  std::cout << "verdict: " << to_string(v.kind) << " (binary: " << to_string(to_binary(v.kind))
            << ")\n";
  if (v.witness) {
    std::cout << "witness:";
    for (const Rational& x : *v.witness) std::cout << ' ' << to_string(x);
    std::cout << "\nmargin: " << to_string(*v.margin) << "\n";
  }
  std::cout << "regions examined: " << v.stats.regions_examined
            << ", lp calls: " << v.stats.lp_calls << ", elapsed: "
            << std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(
                   v.stats.elapsed)
                   .count()
            << " ms\n";
}

int run_verify(const std::string& net_path, const std::string& spec_path,
               const std::string& method, const std::string& support_path,
               const std::string& tau_text) {
  const Network net = load_network(net_path);
  auto [spec, dom] = load_spec(spec_path, net.input_dim());

  if (method == "full") {
    Verdict v = verify_full(net, spec, dom);
    print_verdict(v);
    return v.kind == VerdictKind::Certified ? kExitPass : kExitFail;
  }
  if (method == "box-exact" || method == "ibp") {
    const Box* box = std::get_if<Box>(&dom);
    if (!box) throw FormatError("method '" + method + "' needs a box domain in the spec file");
    Verdict v = verify_bounded(net, spec, *box,
                               method == "ibp" ? BoundedMethod::Ibp : BoundedMethod::ExactOnBox);
    print_verdict(v);
    return v.kind == VerdictKind::Certified ? kExitPass : kExitFail;
  }
  if (method == "proxy") {
    if (support_path.empty()) throw FormatError("method 'proxy' needs --support");
    auto [support, tau] = load_support(support_path);
    if (!tau_text.empty()) tau = parse_rational(tau_text);
    ProxyResult result = proxy_evaluate(net, spec, support, tau);
    std::cout << "proxy score: " << to_string(result.score) << " (tau " << to_string(result.tau)
              << ")\nverdict: "
              << (result.verdict == ProxyVerdict::Aligned ? "aligned" : "unaligned") << "\n";
    return result.verdict == ProxyVerdict::Aligned ? kExitPass : kExitFail;
  }
  throw FormatError("unknown method '" + method + "'");
}

int run_partner(const std::string& net_path, std::uint64_t seed, const std::string& out_dir) {
  const Network net = load_network(net_path);
  SymmetricPartner partner = random_symmetric_partner(net, seed);
  auto [equal, witness] = equivalence_check(net, partner.network, FullSpace{net.input_dim()});
  std::cout << "equivalence: " << (equal ? "certified" : "REFUTED") << "\n";
  std::cout << "representation distance at probe: "
            << to_string(representation_distance(net, partner.network, partner.probe)) << "\n";
  std::filesystem::create_directories(out_dir);
  write_json_file(out_dir + "/partner.json", network_to_json(partner.network));
  Json transforms = Json::array();
  for (const SymmetryTransform& t : partner.transforms) transforms.push_back(transform_to_json(t));
  write_json_file(out_dir + "/transforms.json", transforms);
  std::cout << "wrote " << out_dir << "/partner.json and transforms.json\n";
  return equal ? kExitPass : kExitFail;
}

int run_patch(const std::string& net1_path, const std::string& net2_path,
              const std::string& plan_path, const std::string& spec_path,
              const std::string& tau_text, const std::string& out_dir) {
  const Network theta1 = load_network(net1_path);
  const Network theta2 = load_network(net2_path);
  const PatchPlan plan = load_plan(plan_path);
  auto [spec, dom] = load_spec(spec_path, theta1.input_dim());
  (void)dom;  // the construction always works over the full line
  const Rational tau = tau_text.empty() ? Rational(1) : parse_rational(tau_text);
  DemonstrationReport report = build_unsound_pair(theta1, theta2, plan, spec, tau);
  auto show = [](const char* name, const LegResult& leg) {
    std::cout << (leg.pass ? "[pass] " : "[FAIL] ") << name << ": " << leg.detail << "\n";
  };
  show("on-support agreement ", report.on_support_agreement);
  show("proxy verdict parity ", report.proxy_verdict_parity);
  show("off-support violation", report.exact_violation_off_support);
  show("proxy gap = 1        ", report.gap_is_one);
  std::filesystem::create_directories(out_dir);
  write_json_file(out_dir + "/unsound_pair_report.json", demonstration_report_to_json(report));
  std::cout << "wrote " << out_dir << "/unsound_pair_report.json\n";
  return report.all_pass ? kExitPass : kExitFail;
}

int run_trilemma(const std::string& config_path, const std::string& out_override) {
  TrilemmaConfig cfg;
  if (!config_path.empty()) cfg = config_from_json(load_json_file(config_path));
  if (!out_override.empty()) cfg.output_dir = out_override;
  TrilemmaReport report = run_trilemma_suite(cfg);
  write_report_files(report, cfg.output_dir);

  auto line = [](const char* held, const char* fails, bool ok, const std::string& error) {
    std::cout << held << " held -> " << fails << " fails: "
              << (error.empty() ? (ok ? "demonstrated" : "ASSERTION FAILED") : "ERROR: " + error)
              << "\n";
  };
  line("S+G", "T", report.sg.pass(), report.sg_error);
  line("S+T", "G", report.st.pass(), report.st_error);
  line("G+T", "S", report.gt.pass(), report.gt_error);
  if (report.sg.truncated) std::cout << "note: SG sweep truncated at the region cap\n";
  std::cout << "report written to " << cfg.output_dir << "/trilemma_report.json\n";

  if (report.all_pass()) return kExitPass;
  const bool cap_related = report.sg_error.find("region cap") != std::string::npos ||
                           report.st_error.find("region cap") != std::string::npos ||
                           report.gt_error.find("region cap") != std::string::npos;
  bool sg_all_capped = report.sg_error.empty();
  for (const SgRow& row : report.sg.rows)
    if (!row.capped) sg_all_capped = false;
  return (cap_related || (report.sg.truncated && sg_all_capped)) ? kExitCap : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification toolkit for small ReLU networks"};
  app.require_subcommand(1);

  std::string net_path, spec_path, support_path, tau_text, method = "full";
  auto* verify = app.add_subcommand("verify", "verify a linear spec against a network");
  verify->add_option("--net", net_path, "network JSON file")->required();
  verify->add_option("--spec", spec_path, "spec JSON file")->required();
  verify->add_option("--method", method, "full | box-exact | ibp | proxy");
  verify->add_option("--support", support_path, "evaluation support JSON (proxy method)");
  verify->add_option("--tau", tau_text, "proxy threshold override, e.g. 9/10");

  std::string partner_net, partner_out = ".";
  std::uint64_t seed = 0;
  auto* partner = app.add_subcommand("partner", "construct a certified symmetric partner");
  partner->add_option("--net", partner_net, "network JSON file")->required();
  partner->add_option("--seed", seed, "generator seed")->required();
  partner->add_option("--out", partner_out, "output directory");

  std::string net1_path, net2_path, plan_path, patch_spec, patch_tau, patch_out = ".";
  auto* patch_cmd = app.add_subcommand("patch", "build and check an unsound diagonal pair");
  patch_cmd->add_option("--net1", net1_path, "certified network (theta1)")->required();
  patch_cmd->add_option("--net2", net2_path, "violating network (theta2)")->required();
  patch_cmd->add_option("--plan", plan_path, "patch plan JSON")->required();
  patch_cmd->add_option("--spec", patch_spec, "spec JSON file")->required();
  patch_cmd->add_option("--tau", patch_tau, "proxy threshold, e.g. 1");
  patch_cmd->add_option("--out", patch_out, "output directory");

  std::string config_path, trilemma_out;
  auto* trilemma = app.add_subcommand("trilemma", "run the three-track experiment suite");
  trilemma->add_option("--config", config_path, "config JSON (defaults used when omitted)");
  trilemma->add_option("--out", trilemma_out, "output directory override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify(net_path, spec_path, method, support_path, tau_text);
    if (partner->parsed()) return run_partner(partner_net, seed, partner_out);
    if (patch_cmd->parsed())
      return run_patch(net1_path, net2_path, plan_path, patch_spec, patch_tau, patch_out);
    if (trilemma->parsed()) return run_trilemma(config_path, trilemma_out);
  } catch (const RegionCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitFormat;
}
