#pragma once

#include <nlohmann/json.hpp>

#include "asymptotics.hpp"
#include "geometry.hpp"

namespace coarse {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// ---- report serialization (field names are frozen; golden files depend on them)

json alpha_report_json(const group_descriptor& g, const ratio_profile_result& profile,
                       const alpha_estimate_result& est);
std::string profile_csv(const ratio_profile_result& profile);
std::string ball_csv(const ball_enumeration& ball);
std::string entries_csv(const std::vector<ball_entry>& entries);
json chains_report_json(const finite_metric_space& space, const std::vector<geodesicity_scan_result>& scans,
                        const pair_sample_options& opts);
json homogeneity_report_json(const finite_metric_space& space, const homogeneity_scan_result& scan,
                             std::uint64_t seed, double margin);

// ---- verification scenarios

struct scenario_params {
  std::optional<double> r_max;
  std::optional<double> width;
  std::optional<int> window;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> gens;  // restrict catalog scenarios to one generating set
  std::optional<double> margin;
  std::optional<double> slack;
};

struct scenario_assertion {
  std::string id;
  std::string kind;  // "exact" (arithmetic identity) or "heuristic" (finite-radius check of an asymptotic claim)
  bool passed = false;
  double measured = 0;
  double threshold = 0;
  std::string cmp;  // "==", "<=", ">=", "nonincreasing"
  std::string detail;
};

struct scenario_report {
  std::string scenario;
  json parameters;
  std::uint64_t seed = 1;
  std::vector<scenario_assertion> assertions;
  json payload;
  bool passed = true;  // all assertions

  json to_json() const;
};

std::vector<std::string> scenario_ids();
scenario_report run_scenario(const std::string& id, const scenario_params& params);

// Fixed generating-set catalogs shipped with the tool (reproducible scenario
// surfaces; no search involved).
const std::vector<std::string>& c4z2_gens_catalog();
const std::vector<std::string>& z_gens_catalog();
const std::vector<std::string>& dinf_gens_catalog();

}  // namespace coarse
