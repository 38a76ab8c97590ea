// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json_fwd.hpp>

#include <iosfwd>
#include <string>
#include <utility>

#include "relucert/pwl.hpp"
#include "relucert/symmetry.hpp"

namespace relucert {

using Json = nlohmann::ordered_json;

/// JSON parse that keeps every numeric literal as its exact source text
/// (0.1 stays "0.1", never a binary double), so rationals convert exactly.
Json parse_json_exact(const std::string& text);
Json load_json_file(const std::string& path);

Rational rational_from_json(const Json& j);
int int_from_json(const Json& j);

Network network_from_json(const Json& j);
Json network_to_json(const Network& net);
Network load_network(const std::string& path);

std::pair<LinearSpec, Domain> spec_from_json(const Json& j, int input_dim);
Json spec_to_json(const LinearSpec& spec, const Domain& dom);
std::pair<LinearSpec, Domain> load_spec(const std::string& path, int input_dim);

std::pair<EvalSupport, Rational> support_from_json(const Json& j);  // (support, tau; tau=1 if absent)
Json support_to_json(const EvalSupport& support, const Rational& tau);
std::pair<EvalSupport, Rational> load_support(const std::string& path);

PatchPlan plan_from_json(const Json& j);
Json plan_to_json(const PatchPlan& plan);
PatchPlan load_plan(const std::string& path);

Json transform_to_json(const SymmetryTransform& t);
SymmetryTransform transform_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);
Json demonstration_report_to_json(const DemonstrationReport& report);

void write_json_file(const std::string& path, const Json& j);

}  // namespace relucert
