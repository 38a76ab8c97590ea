// SPDX-License-Identifier: Apache-2.0
#include "relucert/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

#include "relucert/error.hpp"

namespace relucert {

namespace {

// SAX handler that re-emits every number token verbatim as a JSON string.
class ExactNumberHandler {
 public:
  Json root;

  bool null() { return emplace(nullptr); }
  bool boolean(bool v) { return emplace(v); }
  bool number_integer(std::int64_t v) { return emplace(Json(std::to_string(v))); }
  bool number_unsigned(std::uint64_t v) { return emplace(Json(std::to_string(v))); }
  bool number_float(double, const std::string& raw) { return emplace(Json(raw)); }
  bool string(std::string& v) { return emplace(Json(v)); }
  bool binary(nlohmann::json::binary_t&) { throw FormatError("json: binary values unsupported"); }
  bool start_object(std::size_t) {
    stack_.push_back(emplace_container(Json::object()));
    return true;
  }
  bool key(std::string& k) {
    key_ = k;
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) {
    stack_.push_back(emplace_container(Json::array()));
    return true;
  }
  bool end_array() {
    stack_.pop_back();
    return true;
  }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::json::exception& ex) {
    throw FormatError("json parse error at byte " + std::to_string(pos) + ": " + ex.what());
  }

 private:
  bool emplace(Json v) {
    emplace_container(std::move(v));
    return true;
  }
  Json* emplace_container(Json v) {
    if (stack_.empty()) {
      root = std::move(v);
      return &root;
    }
    Json* top = stack_.back();
    if (top->is_object()) {
      auto& slot = (*top)[key_];
      slot = std::move(v);
      return &slot;
    }
    top->push_back(std::move(v));
    return &top->back();
  }

  std::vector<Json*> stack_;
  std::string key_;
};

const Json& require(const Json& j, const char* field) {
  if (!j.is_object() || !j.contains(field))
    throw FormatError(std::string("json: missing field '") + field + "'");
  return j.at(field);
}

RatVec vec_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("json: expected an array of rationals");
  RatVec v;
  for (const Json& e : j) v.push_back(rational_from_json(e));
  return v;
}

Json vec_to_json(const RatVec& v) {
  Json a = Json::array();
  for (const Rational& r : v) a.push_back(to_string(r));
  return a;
}

}  // namespace

Json parse_json_exact(const std::string& text) {
  ExactNumberHandler handler;
  if (!nlohmann::json::sax_parse(text, &handler))
    throw FormatError("json: parse failed");
  return std::move(handler.root);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json_exact(buffer.str());
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw FormatError("json: expected a rational literal, got " + j.dump());
}

int int_from_json(const Json& j) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    if (denominator(r) != 1) throw FormatError("json: expected an integer, got " + j.dump());
    return static_cast<int>(numerator(r).convert_to<long long>());
  }
  throw FormatError("json: expected an integer, got " + j.dump());
}

Network network_from_json(const Json& j) {
  const int input_dim = int_from_json(require(j, "input_dim"));
  const Json& jlayers = require(j, "layers");
  if (!jlayers.is_array() || jlayers.empty())
    throw FormatError("network json: 'layers' must be a nonempty array");
  std::vector<Layer> layers;
  for (const Json& jl : jlayers) {
    Layer layer;
    for (const Json& row : require(jl, "weights")) layer.weights.push_back(vec_from_json(row));
    layer.bias = vec_from_json(require(jl, "bias"));
    layers.push_back(std::move(layer));
  }
  try {
    return Network(input_dim, std::move(layers));
  } catch (const DimensionError& e) {
    throw FormatError(std::string("network json: ") + e.what());
  }
}

Json network_to_json(const Network& net) {
  Json j;
  j["input_dim"] = net.input_dim();
  Json jlayers = Json::array();
  for (const Layer& layer : net.layers()) {
    Json jl;
    Json rows = Json::array();
    for (const RatVec& row : layer.weights) rows.push_back(vec_to_json(row));
    jl["weights"] = std::move(rows);
    jl["bias"] = vec_to_json(layer.bias);
    jlayers.push_back(std::move(jl));
  }
  j["layers"] = std::move(jlayers);
  return j;
}

Network load_network(const std::string& path) { return network_from_json(load_json_file(path)); }

std::pair<LinearSpec, Domain> spec_from_json(const Json& j, int input_dim) {
  LinearSpec spec;
  spec.c = vec_from_json(require(j, "c"));
  spec.b = rational_from_json(require(j, "b"));
  const Json& jdom = require(j, "domain");
  const std::string kind = require(jdom, "kind").get<std::string>();
  if (kind == "full") return {std::move(spec), FullSpace{input_dim}};
  if (kind == "box") {
    Box box = make_box(vec_from_json(require(jdom, "lower")), vec_from_json(require(jdom, "upper")));
    if (static_cast<int>(box.lower.size()) != input_dim)
      throw FormatError("spec json: box dimension does not match the network input");
    return {std::move(spec), std::move(box)};
  }
  throw FormatError("spec json: domain kind must be 'full' or 'box'");
}

Json spec_to_json(const LinearSpec& spec, const Domain& dom) {
  Json j;
  j["c"] = vec_to_json(spec.c);
  j["b"] = to_string(spec.b);
  Json jdom;
  if (const auto* box = std::get_if<Box>(&dom)) {
    jdom["kind"] = "box";
    jdom["lower"] = vec_to_json(box->lower);
    jdom["upper"] = vec_to_json(box->upper);
  } else {
    jdom["kind"] = "full";
  }
  j["domain"] = std::move(jdom);
  return j;
}

std::pair<LinearSpec, Domain> load_spec(const std::string& path, int input_dim) {
  return spec_from_json(load_json_file(path), input_dim);
}

std::pair<EvalSupport, Rational> support_from_json(const Json& j) {
  EvalSupport support;
  for (const Json& p : require(j, "points")) support.points.push_back(vec_from_json(p));
  Rational tau = j.contains("tau") ? rational_from_json(j.at("tau")) : Rational(1);
  return {std::move(support), std::move(tau)};
}

Json support_to_json(const EvalSupport& support, const Rational& tau) {
  Json j;
  Json pts = Json::array();
  for (const RatVec& p : support.points) pts.push_back(vec_to_json(p));
  j["points"] = std::move(pts);
  j["tau"] = to_string(tau);
  return j;
}

std::pair<EvalSupport, Rational> load_support(const std::string& path) {
  return support_from_json(load_json_file(path));
}

PatchPlan plan_from_json(const Json& j) {
  EvalSupport support;
  for (const Json& p : require(j, "points")) support.points.push_back(vec_from_json(p));
  Rational epsilon = rational_from_json(require(j, "epsilon"));
  std::optional<Rational> plateau;
  if (j.contains("plateau")) plateau = rational_from_json(j.at("plateau"));
  return make_patch_plan(std::move(support), std::move(epsilon), std::move(plateau));
}

Json plan_to_json(const PatchPlan& plan) {
  Json j;
  Json pts = Json::array();
  for (const RatVec& p : plan.support.points) pts.push_back(vec_to_json(p));
  j["points"] = std::move(pts);
  j["epsilon"] = to_string(plan.epsilon);
  j["plateau"] = to_string(plan.plateau);
  return j;
}

PatchPlan load_plan(const std::string& path) { return plan_from_json(load_json_file(path)); }

Json transform_to_json(const SymmetryTransform& t) {
  Json j;
  if (const auto* perm = std::get_if<Permutation>(&t)) {
    j["kind"] = "perm";
    j["layer"] = perm->layer;
    j["pi"] = perm->pi;
  } else {
    const auto& scale = std::get<Scaling>(t);
    j["kind"] = "scale";
    j["layer"] = scale.layer;
    j["neuron"] = scale.neuron;
    j["alpha"] = to_string(scale.alpha);
  }
  return j;
}

SymmetryTransform transform_from_json(const Json& j) {
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "perm") {
    Permutation perm;
    perm.layer = int_from_json(require(j, "layer"));
    for (const Json& v : require(j, "pi")) perm.pi.push_back(int_from_json(v));
    return perm;
  }
  if (kind == "scale") {
    Scaling scale;
    scale.layer = int_from_json(require(j, "layer"));
    scale.neuron = int_from_json(require(j, "neuron"));
    scale.alpha = rational_from_json(require(j, "alpha"));
    return scale;
  }
  throw FormatError("transform json: kind must be 'perm' or 'scale'");
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["verdict"] = to_string(v.kind);
  j["binary"] = to_string(to_binary(v.kind));
  if (v.witness) j["witness"] = vec_to_json(*v.witness);
  if (v.margin) j["margin"] = to_string(*v.margin);
  j["regions_examined"] = v.stats.regions_examined;
  j["lp_calls"] = v.stats.lp_calls;
  j["elapsed_ns"] = v.stats.elapsed.count();
  return j;
}

Json demonstration_report_to_json(const DemonstrationReport& report) {
  Json j;
  j["theta1"] = network_to_json(report.theta1);
  j["theta2"] = network_to_json(report.theta2);
  j["theta_prime"] = network_to_json(report.theta_prime);
  j["tau"] = to_string(report.tau);
  j["score_theta1"] = to_string(report.score_theta1);
  j["score_theta_prime"] = to_string(report.score_prime);
  j["witness"] = vec_to_json(report.witness);
  j["witness_margin"] = to_string(report.witness_margin);
  j["proxy_gap"] = to_string(report.gap);
  auto leg = [](const LegResult& r) {
    Json l;
    l["pass"] = r.pass;
    l["detail"] = r.detail;
    return l;
  };
  j["on_support_agreement"] = leg(report.on_support_agreement);
  j["proxy_verdict_parity"] = leg(report.proxy_verdict_parity);
  j["exact_violation_off_support"] = leg(report.exact_violation_off_support);
  j["gap_is_one"] = leg(report.gap_is_one);
  j["all_pass"] = report.all_pass;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace relucert
