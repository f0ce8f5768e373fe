#pragma once

#include "qkdroute/adversary.hpp"
#include "qkdroute/network.hpp"
#include "qkdroute/offline.hpp"
#include "qkdroute/online.hpp"
#include "qkdroute/plan.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Strict JSON (de)serialization: unknown keys, wrong types, and non-integer
// numbers are rejected with a ValidationError naming the offending field.
// Serializers emit deterministic documents (alphabetical keys, sorted
// network elements); decimals appear only in presentation-only fields.
namespace qkdroute::io {

using json = nlohmann::json;

json network_to_json(const Network& net);
Network network_from_json(const json& j);

json contracts_to_json(const std::vector<Contract>& contracts);
std::vector<Contract> contracts_from_json(const json& j);

json trace_to_json(const Trace& trace);
Trace trace_from_json(const json& j);

// Edge list; the empty path is an empty array.
json path_to_json(const Path& path);
Path path_from_json(const json& j);

// Rejected decisions serialize as null.
json decision_to_json(const Path& path);
Path decision_from_json(const json& j);

json path_set_to_json(const PathSet& set);

// Per-contract report rows (chosen path, grant, demand, priority, suggested
// rejection) plus the exact objective value.
json solution_to_json(const PlanProblem& problem, const PlanSolution& solution);
PlanSolution solution_from_json(const json& j);

json simulation_to_json(const SimulationResult& result);
SimulationResult simulation_from_json(const json& j);

json ratio_report_to_json(const RatioReport& report);

json manifest_to_json(const AdversarialInstance& instance);

struct RunConfig {
  int max_hops = 3;
  Objective objective = Objective::Pescf;
  std::optional<Strategy> strategy;
  std::optional<RefreshConfig> refresh;
  std::int64_t search_budget = 10'000'000;
  std::int64_t seed = 0;

  bool operator==(const RunConfig&) const = default;
};

json run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const json& j);

}  // namespace qkdroute::io
