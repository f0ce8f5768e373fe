// qkdroute: exact route planning and online routing simulation for
// key-distribution networks. Subcommands: plan, simulate, adversary,
// verify, paths. Data goes to stdout (or --output), diagnostics to stderr.
#include "qkdroute/json_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qkdroute;
using io::json;
using io::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitSuggestions = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitBudget = 4;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError({"cannot open file: " + path});
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError({path + ": " + e.what()});
  }
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) {
    throw ValidationError({"cannot write file: " + output_path});
  }
  out << text;
}

void emit(const json& doc, const std::string& output_path) {
  emit(doc.dump(2) + "\n", output_path);
}

// Options shared by subcommands; flags override the optional config file.
struct ConfigCli {
  std::string config_path;
  int max_hops = 0;
  std::string objective;
  std::string strategy;
  std::int64_t search_budget = 0;
  std::int64_t seed = 0;
  std::int64_t refresh_period = 0;
  std::vector<std::string> refresh_rates;

  CLI::Option* max_hops_opt = nullptr;
  CLI::Option* objective_opt = nullptr;
  CLI::Option* strategy_opt = nullptr;
  CLI::Option* search_budget_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* refresh_period_opt = nullptr;
  CLI::Option* refresh_rates_opt = nullptr;

  void attach(CLI::App& cmd, bool with_plan_options,
              bool with_online_options) {
    cmd.add_option("--config", config_path,
                   "JSON run configuration; flags override its fields");
    if (with_plan_options) {
      max_hops_opt = cmd.add_option("--max-hops", max_hops,
                                    "candidate path hop ceiling (default 3)");
      objective_opt = cmd.add_option("--objective", objective,
                                     "PESCF, ESCF, or EDGR (default PESCF)");
    }
    if (with_online_options) {
      strategy_opt = cmd.add_option("--strategy", strategy, "SAP or WSP");
      refresh_period_opt =
          cmd.add_option("--refresh-period", refresh_period,
                         "apply refresh after every Nth request");
      refresh_rates_opt = cmd.add_option(
          "--refresh-rate", refresh_rates,
          "per-edge refresh rate as SRC,DST,RATE (repeatable)");
    }
    search_budget_opt = cmd.add_option("--search-budget", search_budget,
                                       "search node/state ceiling");
    seed_opt = cmd.add_option("--seed", seed, "seed for seeded commands");
  }

  RunConfig resolve() const {
    RunConfig config;
    if (!config_path.empty()) {
      config = io::run_config_from_json(read_json_file(config_path));
    }
    if (max_hops_opt && max_hops_opt->count() > 0) {
      if (max_hops < 1) {
        throw ValidationError({"--max-hops must be positive"});
      }
      config.max_hops = max_hops;
    }
    if (objective_opt && objective_opt->count() > 0) {
      config.objective = objective_from_string(objective);
    }
    if (strategy_opt && strategy_opt->count() > 0) {
      config.strategy = strategy_from_string(strategy);
    }
    if (search_budget_opt && search_budget_opt->count() > 0) {
      if (search_budget < 1) {
        throw ValidationError({"--search-budget must be positive"});
      }
      config.search_budget = search_budget;
    }
    if (seed_opt && seed_opt->count() > 0) {
      config.seed = seed;
    }
    const bool rates_given =
        refresh_rates_opt && refresh_rates_opt->count() > 0;
    const bool period_given =
        refresh_period_opt && refresh_period_opt->count() > 0;
    if (rates_given || period_given) {
      RefreshConfig refresh =
          config.refresh.value_or(RefreshConfig{{}, 1});
      if (period_given) {
        if (refresh_period < 1) {
          throw ValidationError({"--refresh-period must be positive"});
        }
        refresh.period = refresh_period;
      }
      if (rates_given) {
        refresh.rates.clear();
        for (const auto& entry : refresh_rates) {
          std::istringstream parts(entry);
          std::string src, dst, rate_text;
          if (!std::getline(parts, src, ',') ||
              !std::getline(parts, dst, ',') ||
              !std::getline(parts, rate_text)) {
            throw ValidationError(
                {"--refresh-rate expects SRC,DST,RATE, got: " + entry});
          }
          std::int64_t rate = 0;
          try {
            rate = std::stoll(rate_text);
          } catch (const std::exception&) {
            throw ValidationError({"--refresh-rate rate is not an integer: " +
                                   entry});
          }
          if (rate < 0) {
            throw ValidationError({"--refresh-rate rate must be >= 0: " +
                                   entry});
          }
          refresh.rates[Edge{NodeId{src}, NodeId{dst}}] = rate;
        }
      }
      config.refresh = std::move(refresh);
    }
    return config;
  }
};

int cmd_plan(const std::string& network_path, const std::string& contracts_path,
             const std::string& output_path, const ConfigCli& cli) {
  const RunConfig config = cli.resolve();
  const Network net = io::network_from_json(read_json_file(network_path));
  const auto contracts =
      io::contracts_from_json(read_json_file(contracts_path));
  const PlanProblem problem =
      build_problem(net, contracts, config.max_hops, config.objective);
  const PlanSolution solution =
      solve(problem, SolveBudget{config.search_budget});
  const ConstraintReport report = check_solution(problem, solution);
  if (!report.all_pass() || !report.objective_matches) {
    throw std::logic_error("solver produced an infeasible solution");
  }
  emit(io::solution_to_json(problem, solution), output_path);
  for (std::size_t i = 0; i < problem.contracts.size(); ++i) {
    if (solution.grant[i] < problem.contracts[i].bandwidth) {
      return kExitSuggestions;
    }
  }
  return kExitOk;
}

int cmd_simulate(const std::string& network_path, const std::string& trace_path,
                 const std::string& output_path, const ConfigCli& cli) {
  const RunConfig config = cli.resolve();
  if (!config.strategy) {
    throw ValidationError(
        {"simulate needs a strategy (--strategy or config file)"});
  }
  const Network net = io::network_from_json(read_json_file(network_path));
  const Trace trace = io::trace_from_json(read_json_file(trace_path));
  const SimulationResult result =
      simulate(net, trace, *config.strategy, config.refresh);
  emit(io::simulation_to_json(result), output_path);
  return kExitOk;
}

AdversarialInstance generate(Construction construction, std::int64_t edges,
                             std::int64_t beta, std::int64_t mu) {
  return construction == Construction::SapWorst
             ? gen_sap_worst(edges, beta, mu)
             : gen_wsp_worst(edges, beta, mu);
}

int cmd_adversary(const std::string& construction_text, std::int64_t edges,
                  std::int64_t beta, std::int64_t mu,
                  const std::string& out_dir) {
  const Construction construction =
      construction_from_string(construction_text);
  const AdversarialInstance instance = generate(construction, edges, beta, mu);
  std::filesystem::create_directories(out_dir);
  const auto under = [&](const char* name) {
    return (std::filesystem::path(out_dir) / name).string();
  };
  emit(io::network_to_json(instance.net), under("network.json"));
  emit(io::trace_to_json(instance.trace), under("trace.json"));
  const json manifest = io::manifest_to_json(instance);
  emit(manifest, under("manifest.json"));
  emit(manifest, "");
  return kExitOk;
}

int cmd_verify(const std::string& construction_text,
               const std::vector<std::string>& rows,
               const std::string& output_path, const ConfigCli& cli) {
  const RunConfig config = cli.resolve();
  const Construction construction =
      construction_from_string(construction_text);
  std::ostringstream csv;
  csv << "construction,edge_count,beta,mu,served,opt,simulated_ratio,"
         "predicted_ratio,match\n";
  bool any_mismatch = false;
  for (const auto& row : rows) {
    std::int64_t edges = 0, beta = 0, mu = 0;
    {
      std::istringstream parts(row);
      std::string a, b, c;
      if (!std::getline(parts, a, ',') || !std::getline(parts, b, ',') ||
          !std::getline(parts, c)) {
        throw ValidationError({"--row expects E,BETA,MU, got: " + row});
      }
      try {
        edges = std::stoll(a);
        beta = std::stoll(b);
        mu = std::stoll(c);
      } catch (const std::exception&) {
        throw ValidationError({"--row values must be integers: " + row});
      }
    }
    const AdversarialInstance instance =
        generate(construction, edges, beta, mu);
    csv << to_string(construction) << "," << edges << "," << beta << ","
        << mu << ",";
    const auto hint = constructive_assignment(instance);
    try {
      const SearchBudget budget{20, config.search_budget};
      const RatioReport report = competitive_ratio(
          instance.net, instance.trace, matching_strategy(construction),
          budget, &hint);
      const bool match = report.ratio == instance.predicted_ratio;
      any_mismatch = any_mismatch || !match;
      csv << report.algorithm_served << "," << report.opt_served << ","
          << fraction_string(report.ratio) << ","
          << fraction_string(instance.predicted_ratio) << ","
          << (match ? "true" : "false") << "\n";
    } catch (const BudgetExceeded&) {
      csv << ",,," << fraction_string(instance.predicted_ratio)
          << ",skipped\n";
    }
  }
  emit(csv.str(), output_path);
  return any_mismatch ? kExitMismatch : kExitOk;
}

int cmd_paths(const std::string& network_path, const std::string& src,
              const std::string& dst, const ConfigCli& cli,
              const std::string& output_path) {
  const RunConfig config = cli.resolve();
  const Network net = io::network_from_json(read_json_file(network_path));
  const PathSet set =
      enumerate_paths(net, NodeId{src}, NodeId{dst}, config.max_hops);
  emit(io::path_set_to_json(set), output_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact route planning and online routing simulation for "
               "key-distribution networks"};
  app.require_subcommand(1);

  std::string network_path, contracts_path, trace_path, output_path;
  std::string construction_text, out_dir, src, dst;
  std::int64_t edges = 0, beta = 0, mu = 0;
  std::vector<std::string> rows;

  auto* plan = app.add_subcommand(
      "plan", "Solve the fair-allocation program for a contract set");
  plan->add_option("--network", network_path, "network JSON file")
      ->required();
  plan->add_option("--contracts", contracts_path, "contracts JSON file")
      ->required();
  plan->add_option("--output", output_path, "report path (default stdout)");
  ConfigCli plan_cli;
  plan_cli.attach(*plan, true, false);

  auto* simulate_cmd = app.add_subcommand(
      "simulate", "Replay a request trace under SAP or WSP");
  simulate_cmd->add_option("--network", network_path, "network JSON file")
      ->required();
  simulate_cmd->add_option("--trace", trace_path, "trace JSON file")
      ->required();
  simulate_cmd->add_option("--output", output_path,
                           "report path (default stdout)");
  ConfigCli simulate_cli;
  simulate_cli.attach(*simulate_cmd, false, true);

  auto* adversary = app.add_subcommand(
      "adversary", "Generate a worst-case instance and its manifest");
  adversary
      ->add_option("--construction", construction_text,
                   "SAP_WORST or WSP_WORST")
      ->required();
  adversary->add_option("--edges", edges, "declared edge count")->required();
  adversary->add_option("--beta", beta, "per-edge key capacity")->required();
  adversary->add_option("--mu", mu, "per-request bit ceiling")->required();
  adversary->add_option("--out-dir", out_dir, "directory for instance files")
      ->required();

  auto* verify = app.add_subcommand(
      "verify", "Check simulated competitive ratios against closed forms");
  verify
      ->add_option("--construction", construction_text,
                   "SAP_WORST or WSP_WORST")
      ->required();
  verify->add_option("--row", rows, "parameter tuple E,BETA,MU (repeatable)");
  verify->add_option("--output", output_path, "CSV path (default stdout)");
  ConfigCli verify_cli;
  verify_cli.attach(*verify, false, false);

  auto* paths = app.add_subcommand(
      "paths", "Enumerate candidate simple paths between two nodes");
  paths->add_option("--network", network_path, "network JSON file")
      ->required();
  paths->add_option("--src", src, "source node")->required();
  paths->add_option("--dst", dst, "destination node")->required();
  paths->add_option("--output", output_path, "report path (default stdout)");
  ConfigCli paths_cli;
  paths_cli.attach(*paths, true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (plan->parsed()) {
      return cmd_plan(network_path, contracts_path, output_path, plan_cli);
    }
    if (simulate_cmd->parsed()) {
      return cmd_simulate(network_path, trace_path, output_path,
                          simulate_cli);
    }
    if (adversary->parsed()) {
      return cmd_adversary(construction_text, edges, beta, mu, out_dir);
    }
    if (verify->parsed()) {
      return cmd_verify(construction_text, rows, output_path, verify_cli);
    }
    if (paths->parsed()) {
      return cmd_paths(network_path, src, dst, paths_cli, output_path);
    }
  } catch (const ValidationError& e) {
    for (const auto& issue : e.issues()) {
      std::cerr << "error: " << issue << "\n";
    }
    return kExitInputError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
