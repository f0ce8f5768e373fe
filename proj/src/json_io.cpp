#include "qkdroute/json_io.hpp"

#include <algorithm>
#include <set>

namespace qkdroute::io {

namespace {

[[noreturn]] void bad(const std::string& message) {
  throw ValidationError({message});
}

void require_object(const json& j, const std::string& context) {
  if (!j.is_object()) {
    bad(context + ": expected an object");
  }
}

// Every key must be declared; every non-optional declared key must appear.
void require_keys(const json& j, const std::string& context,
                  const std::vector<std::string>& required,
                  const std::vector<std::string>& optional = {}) {
  require_object(j, context);
  for (const auto& [key, value] : j.items()) {
    const bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) {
      bad(context + ": unknown key \"" + key + "\"");
    }
  }
  for (const auto& key : required) {
    if (!j.contains(key)) {
      bad(context + ": missing key \"" + key + "\"");
    }
  }
}

std::int64_t get_int(const json& j, const std::string& key,
                     const std::string& context) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) {
    bad(context + ": \"" + key + "\" must be an integer");
  }
  return v.get<std::int64_t>();
}

std::string get_string(const json& j, const std::string& key,
                       const std::string& context) {
  const auto& v = j.at(key);
  if (!v.is_string()) {
    bad(context + ": \"" + key + "\" must be a string");
  }
  return v.get<std::string>();
}

const json& get_array(const json& j, const std::string& key,
                      const std::string& context) {
  const auto& v = j.at(key);
  if (!v.is_array()) {
    bad(context + ": \"" + key + "\" must be an array");
  }
  return v;
}

json edge_to_json(const Edge& edge) {
  return json{{"src", edge.src.name}, {"dst", edge.dst.name}};
}

Edge edge_from_json(const json& j, const std::string& context) {
  require_keys(j, context, {"src", "dst"});
  return Edge{NodeId{get_string(j, "src", context)},
              NodeId{get_string(j, "dst", context)}};
}

Rational fraction_from(const json& j, const std::string& key,
                       const std::string& context) {
  try {
    return parse_fraction(get_string(j, key, context));
  } catch (const std::invalid_argument& e) {
    bad(context + ": \"" + key + "\": " + e.what());
  }
}

}  // namespace

json network_to_json(const Network& net) {
  json nodes = json::array();
  for (const auto& node : net.nodes()) {
    nodes.push_back(node.name);
  }
  json edges = json::array();
  for (const auto& edge : net.edges()) {
    edges.push_back(json{{"src", edge.src.name},
                         {"dst", edge.dst.name},
                         {"capacity", net.capacity(edge)}});
  }
  return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Network network_from_json(const json& j) {
  require_keys(j, "network", {"nodes", "edges"});
  RawNetwork raw;
  for (const auto& node : get_array(j, "nodes", "network")) {
    if (!node.is_string()) {
      bad("network: every node must be a string");
    }
    raw.nodes.push_back(node.get<std::string>());
  }
  std::size_t index = 0;
  for (const auto& edge : get_array(j, "edges", "network")) {
    const std::string context = "network edge " + std::to_string(index++);
    require_keys(edge, context, {"src", "dst", "capacity"});
    raw.edges.push_back(RawEdge{get_string(edge, "src", context),
                                get_string(edge, "dst", context),
                                get_int(edge, "capacity", context)});
  }
  return Network::from_raw(raw);
}

json contracts_to_json(const std::vector<Contract>& contracts) {
  json rows = json::array();
  for (const auto& c : contracts) {
    rows.push_back(json{{"src", c.source.name},
                        {"dst", c.dest.name},
                        {"bandwidth", c.bandwidth},
                        {"priority", c.priority}});
  }
  return json{{"contracts", std::move(rows)}};
}

std::vector<Contract> contracts_from_json(const json& j) {
  require_keys(j, "contracts", {"contracts"});
  std::vector<Contract> out;
  std::size_t index = 0;
  for (const auto& row : get_array(j, "contracts", "contracts")) {
    const std::string context = "contract " + std::to_string(index++);
    require_keys(row, context, {"src", "dst", "bandwidth", "priority"});
    out.push_back(Contract{NodeId{get_string(row, "src", context)},
                           NodeId{get_string(row, "dst", context)},
                           get_int(row, "bandwidth", context),
                           get_int(row, "priority", context)});
  }
  return out;
}

json trace_to_json(const Trace& trace) {
  json rows = json::array();
  for (const auto& r : trace.requests) {
    rows.push_back(json{{"src", r.source.name},
                        {"dst", r.dest.name},
                        {"bits", r.bits}});
  }
  return json{{"mu", trace.mu}, {"requests", std::move(rows)}};
}

Trace trace_from_json(const json& j) {
  require_keys(j, "trace", {"mu", "requests"});
  Trace trace;
  trace.mu = get_int(j, "mu", "trace");
  std::size_t index = 0;
  for (const auto& row : get_array(j, "requests", "trace")) {
    const std::string context = "request " + std::to_string(index++);
    require_keys(row, context, {"src", "dst", "bits"});
    trace.requests.push_back(Request{NodeId{get_string(row, "src", context)},
                                     NodeId{get_string(row, "dst", context)},
                                     get_int(row, "bits", context)});
  }
  return trace;
}

json path_to_json(const Path& path) {
  json edges = json::array();
  for (const auto& edge : path.edges) {
    edges.push_back(edge_to_json(edge));
  }
  return edges;
}

Path path_from_json(const json& j) {
  if (!j.is_array()) {
    bad("path: expected an array of edges");
  }
  Path path;
  std::size_t index = 0;
  for (const auto& edge : j) {
    path.edges.push_back(
        edge_from_json(edge, "path edge " + std::to_string(index++)));
  }
  return path;
}

json decision_to_json(const Path& path) {
  return path.empty() ? json(nullptr) : path_to_json(path);
}

Path decision_from_json(const json& j) {
  return j.is_null() ? Path{} : path_from_json(j);
}

json path_set_to_json(const PathSet& set) {
  json paths = json::array();
  for (const auto& path : set.paths) {
    paths.push_back(path_to_json(path));
  }
  return json{{"src", set.source.name},
              {"dst", set.dest.name},
              {"max_hops", set.max_hops},
              {"paths", std::move(paths)}};
}

json solution_to_json(const PlanProblem& problem,
                      const PlanSolution& solution) {
  json rows = json::array();
  for (std::size_t i = 0; i < problem.contracts.size(); ++i) {
    const auto& c = problem.contracts[i];
    const auto chosen = solution.chosen_path(i);
    if (!chosen) {
      throw std::invalid_argument(
          "cannot serialize a solution that does not select exactly one "
          "path for contract " +
          std::to_string(i));
    }
    json edge_grants = json::array();
    for (const auto& [edge, value] : solution.edge_grant[i]) {
      edge_grants.push_back(json{
          {"src", edge.src.name}, {"dst", edge.dst.name}, {"grant", value}});
    }
    rows.push_back(
        json{{"src", c.source.name},
             {"dst", c.dest.name},
             {"demand", c.bandwidth},
             {"priority", c.priority},
             {"grant", solution.grant[i]},
             {"suggested_rejection", solution.grant[i] == 0},
             {"chosen_path_index", *chosen},
             {"path", path_to_json(problem.path_sets[i].paths[*chosen])},
             {"per_path_grant", solution.per_path_grant[i]},
             {"edge_grant", std::move(edge_grants)}});
  }
  return json{{"objective", to_string(problem.objective)},
              {"objective_value", fraction_string(solution.objective_value)},
              {"objective_value_decimal",
               fraction_decimal(solution.objective_value)},
              {"contracts", std::move(rows)}};
}

PlanSolution solution_from_json(const json& j) {
  require_keys(j, "solution",
               {"objective", "objective_value", "objective_value_decimal",
                "contracts"});
  PlanSolution solution;
  solution.objective_value = fraction_from(j, "objective_value", "solution");
  std::size_t index = 0;
  for (const auto& row : get_array(j, "contracts", "solution")) {
    const std::string context = "solution contract " + std::to_string(index++);
    require_keys(row, context,
                 {"src", "dst", "demand", "priority", "grant",
                  "suggested_rejection", "chosen_path_index", "path",
                  "per_path_grant", "edge_grant"});
    const auto& per_path = get_array(row, "per_path_grant", context);
    std::vector<std::int64_t> grants_row;
    for (const auto& g : per_path) {
      if (!g.is_number_integer()) {
        bad(context + ": per_path_grant entries must be integers");
      }
      grants_row.push_back(g.get<std::int64_t>());
    }
    const std::int64_t chosen = get_int(row, "chosen_path_index", context);
    if (chosen < 0 || chosen >= static_cast<std::int64_t>(grants_row.size())) {
      bad(context + ": chosen_path_index out of range");
    }
    std::vector<int> choice(grants_row.size(), 0);
    choice[static_cast<std::size_t>(chosen)] = 1;
    CapacityMap edge_grant;
    std::size_t edge_index = 0;
    for (const auto& entry : get_array(row, "edge_grant", context)) {
      const std::string edge_context =
          context + " edge_grant " + std::to_string(edge_index++);
      require_keys(entry, edge_context, {"src", "dst", "grant"});
      edge_grant[Edge{NodeId{get_string(entry, "src", edge_context)},
                      NodeId{get_string(entry, "dst", edge_context)}}] =
          get_int(entry, "grant", edge_context);
    }
    solution.path_choice.push_back(std::move(choice));
    solution.grant.push_back(get_int(row, "grant", context));
    solution.per_path_grant.push_back(std::move(grants_row));
    solution.edge_grant.push_back(std::move(edge_grant));
  }
  return solution;
}

json simulation_to_json(const SimulationResult& result) {
  json decisions = json::array();
  for (const auto& path : result.decisions) {
    decisions.push_back(decision_to_json(path));
  }
  json residuals = json::array();
  for (const auto& [edge, residual] : result.final_state.residual) {
    residuals.push_back(json{{"src", edge.src.name},
                             {"dst", edge.dst.name},
                             {"residual", residual}});
  }
  return json{{"served", result.served_count},
              {"rejected", result.rejected_count},
              {"decisions", std::move(decisions)},
              {"final_residual", std::move(residuals)}};
}

SimulationResult simulation_from_json(const json& j) {
  require_keys(j, "simulation",
               {"served", "rejected", "decisions", "final_residual"});
  SimulationResult result;
  result.served_count = get_int(j, "served", "simulation");
  result.rejected_count = get_int(j, "rejected", "simulation");
  for (const auto& decision : get_array(j, "decisions", "simulation")) {
    result.decisions.push_back(decision_from_json(decision));
  }
  std::size_t index = 0;
  for (const auto& entry : get_array(j, "final_residual", "simulation")) {
    const std::string context = "final_residual " + std::to_string(index++);
    require_keys(entry, context, {"src", "dst", "residual"});
    result.final_state.residual[Edge{
        NodeId{get_string(entry, "src", context)},
        NodeId{get_string(entry, "dst", context)}}] =
        get_int(entry, "residual", context);
  }
  return result;
}

json ratio_report_to_json(const RatioReport& report) {
  json assignment = json::array();
  for (const auto& path : report.opt_assignment) {
    assignment.push_back(decision_to_json(path));
  }
  return json{{"algorithm_served", report.algorithm_served},
              {"opt_served", report.opt_served},
              {"ratio", fraction_string(report.ratio)},
              {"ratio_decimal", fraction_decimal(report.ratio)},
              {"opt_assignment", std::move(assignment)}};
}

json manifest_to_json(const AdversarialInstance& instance) {
  return json{{"construction", to_string(instance.construction)},
              {"edge_count", instance.edge_count},
              {"beta", instance.beta},
              {"mu", instance.mu},
              {"predicted_ratio", fraction_string(instance.predicted_ratio)},
              {"predicted_ratio_decimal",
               fraction_decimal(instance.predicted_ratio)},
              {"trace_length", instance.trace.requests.size()}};
}

json run_config_to_json(const RunConfig& config) {
  json out{{"max_hops", config.max_hops},
           {"objective", to_string(config.objective)},
           {"search_budget", config.search_budget},
           {"seed", config.seed}};
  if (config.strategy) {
    out["strategy"] = to_string(*config.strategy);
  }
  if (config.refresh) {
    json rates = json::array();
    for (const auto& [edge, rate] : config.refresh->rates) {
      rates.push_back(json{
          {"src", edge.src.name}, {"dst", edge.dst.name}, {"rate", rate}});
    }
    out["refresh"] =
        json{{"period", config.refresh->period}, {"rates", std::move(rates)}};
  }
  return out;
}

RunConfig run_config_from_json(const json& j) {
  require_keys(j, "config", {},
               {"max_hops", "objective", "strategy", "refresh",
                "search_budget", "seed"});
  RunConfig config;
  if (j.contains("max_hops")) {
    const std::int64_t hops = get_int(j, "max_hops", "config");
    if (hops < 1) {
      bad("config: max_hops must be positive");
    }
    config.max_hops = static_cast<int>(hops);
  }
  if (j.contains("objective")) {
    try {
      config.objective =
          objective_from_string(get_string(j, "objective", "config"));
    } catch (const std::invalid_argument& e) {
      bad(std::string("config: ") + e.what());
    }
  }
  if (j.contains("strategy")) {
    try {
      config.strategy =
          strategy_from_string(get_string(j, "strategy", "config"));
    } catch (const std::invalid_argument& e) {
      bad(std::string("config: ") + e.what());
    }
  }
  if (j.contains("refresh")) {
    const auto& r = j.at("refresh");
    require_keys(r, "config refresh", {"period", "rates"});
    RefreshConfig refresh;
    refresh.period = get_int(r, "period", "config refresh");
    if (refresh.period < 1) {
      bad("config refresh: period must be positive");
    }
    std::size_t index = 0;
    for (const auto& entry : get_array(r, "rates", "config refresh")) {
      const std::string context =
          "config refresh rate " + std::to_string(index++);
      require_keys(entry, context, {"src", "dst", "rate"});
      const std::int64_t rate = get_int(entry, "rate", context);
      if (rate < 0) {
        bad(context + ": rate must be non-negative");
      }
      refresh.rates[Edge{NodeId{get_string(entry, "src", context)},
                         NodeId{get_string(entry, "dst", context)}}] = rate;
    }
    config.refresh = std::move(refresh);
  }
  if (j.contains("search_budget")) {
    config.search_budget = get_int(j, "search_budget", "config");
    if (config.search_budget < 1) {
      bad("config: search_budget must be positive");
    }
  }
  if (j.contains("seed")) {
    config.seed = get_int(j, "seed", "config");
  }
  return config;
}

}  // namespace qkdroute::io
