#include "qkdroute/plan.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

namespace qkdroute {

namespace {

std::string contract_label(const Contract& c) {
  std::ostringstream out;
  out << "(" << c.source.name << ", " << c.dest.name << ", b=" << c.bandwidth
      << ", p=" << c.priority << ")";
  return out.str();
}

void require_grant_vector(const PlanProblem& problem,
                          std::span<const std::int64_t> grants) {
  if (grants.size() != problem.contracts.size()) {
    throw std::invalid_argument(
        "grant vector has " + std::to_string(grants.size()) +
        " entries, expected " + std::to_string(problem.contracts.size()));
  }
  for (std::size_t i = 0; i < grants.size(); ++i) {
    if (grants[i] < 0 || grants[i] > problem.contracts[i].bandwidth) {
      throw std::invalid_argument(
          "grant " + std::to_string(grants[i]) + " out of range [0, " +
          std::to_string(problem.contracts[i].bandwidth) + "] for contract " +
          contract_label(problem.contracts[i]));
    }
  }
}

Rational squared_shortfall(const PlanProblem& problem,
                           std::span<const std::int64_t> grants,
                           bool weighted) {
  require_grant_vector(problem, grants);
  BigInt total = 0;
  for (std::size_t i = 0; i < grants.size(); ++i) {
    const BigInt diff = problem.contracts[i].bandwidth - grants[i];
    const BigInt weight = weighted ? problem.contracts[i].priority : 1;
    total += weight * diff * diff;
  }
  return Rational(total);
}

// Shared by solve and brute_force_solve as plain data preparation: candidate
// paths resolved to edge indices, nominal capacities by edge index.
struct ResolvedProblem {
  std::vector<std::vector<std::vector<std::size_t>>> path_edges;
  std::vector<std::int64_t> nominal;
  std::vector<std::size_t> set_sizes;

  explicit ResolvedProblem(const PlanProblem& problem) {
    for (const auto& edge : problem.net.edges()) {
      nominal.push_back(problem.net.capacity(edge));
    }
    for (const auto& set : problem.path_sets) {
      set_sizes.push_back(set.paths.size());
      auto& per_path = path_edges.emplace_back();
      for (const auto& path : set.paths) {
        auto& ids = per_path.emplace_back();
        for (const auto& edge : path.edges) {
          ids.push_back(problem.net.edge_index(edge));
        }
      }
    }
  }
};

// Lexicographic odometer over per-position sizes; false when wrapped.
bool advance(std::vector<std::size_t>& at, const std::vector<std::size_t>& sizes) {
  for (std::size_t i = at.size(); i-- > 0;) {
    if (++at[i] < sizes[i]) {
      return true;
    }
    at[i] = 0;
  }
  return false;
}

std::int64_t path_bottleneck(const std::vector<std::int64_t>& residual,
                             const std::vector<std::size_t>& edge_ids) {
  std::int64_t low = std::numeric_limits<std::int64_t>::max();
  for (std::size_t id : edge_ids) {
    low = std::min(low, residual[id]);
  }
  return low;
}

PlanSolution assemble_solution(const PlanProblem& problem,
                               const std::vector<std::size_t>& assign,
                               const std::vector<std::int64_t>& grants,
                               Rational value) {
  PlanSolution out;
  out.objective_value = std::move(value);
  out.grant = grants;
  for (std::size_t i = 0; i < assign.size(); ++i) {
    const auto& paths = problem.path_sets[i].paths;
    out.path_choice.emplace_back(paths.size(), 0);
    out.path_choice.back()[assign[i]] = 1;
    out.per_path_grant.emplace_back(paths.size(), 0);
    out.per_path_grant.back()[assign[i]] = grants[i];
    CapacityMap per_edge;
    for (const auto& edge : paths[assign[i]].edges) {
      per_edge[edge] = grants[i];
    }
    out.edge_grant.push_back(std::move(per_edge));
  }
  return out;
}

// Incremental cost bookkeeping for the branch-and-bound. For the pairwise
// objective the cost of fixing one grant depends on all grants fixed before
// it, so the evaluator carries the assigned granted-ratio stack.
struct CostModel {
  const PlanProblem& problem;
  const ResolvedProblem& resolved;

  // Cost added by fixing contract k's grant to beta.
  Rational step(std::span<const Rational> assigned_ratios, std::size_t k,
                std::int64_t beta) const {
    const auto& c = problem.contracts[k];
    switch (problem.objective) {
      case Objective::Pescf:
      case Objective::Escf: {
        const BigInt diff = c.bandwidth - beta;
        const BigInt weight =
            problem.objective == Objective::Pescf ? c.priority : 1;
        return Rational(weight * diff * diff);
      }
      case Objective::Edgr: {
        const Rational ratio(beta, c.bandwidth);
        Rational acc = -Rational(beta);
        for (std::size_t i = 0; i < k; ++i) {
          const Rational diff = assigned_ratios[i] - ratio;
          acc += diff * diff;
        }
        return acc;
      }
    }
    throw std::logic_error("unreachable objective kind");
  }

  // Admissible bound on the total cost still to come for contracts
  // next..end under the given residual capacities: residuals only shrink as
  // more grants are fixed, so each contract's cheapest reachable cost (for
  // the pairwise objective: its largest possible grant, pair terms >= 0)
  // bounds from below.
  Rational rest_bound(const std::vector<std::int64_t>& residual,
                      const std::vector<std::size_t>& assign,
                      std::size_t next) const {
    Rational acc = 0;
    for (std::size_t j = next; j < assign.size(); ++j) {
      const auto& c = problem.contracts[j];
      const std::int64_t reachable = std::min(
          c.bandwidth,
          path_bottleneck(residual, resolved.path_edges[j][assign[j]]));
      switch (problem.objective) {
        case Objective::Pescf:
        case Objective::Escf: {
          const BigInt diff = c.bandwidth - reachable;
          const BigInt weight =
              problem.objective == Objective::Pescf ? c.priority : 1;
          acc += Rational(weight * diff * diff);
          break;
        }
        case Objective::Edgr:
          acc -= reachable;
          break;
      }
    }
    return acc;
  }
};

struct NodeCounter {
  std::int64_t used = 0;
  std::int64_t limit = 0;

  void tick() {
    if (++used > limit) {
      throw BudgetExceeded("plan search exceeded node budget of " +
                           std::to_string(limit));
    }
  }
};

// Smallest total cost achievable under the fixed path assignment that is
// strictly below bound (when present); nullopt when no such total exists.
std::optional<Rational> assignment_minimum(
    const CostModel& cost, const std::vector<std::size_t>& assign,
    NodeCounter& counter, const std::optional<Rational>& bound) {
  const std::size_t n = assign.size();
  std::vector<std::int64_t> residual = cost.resolved.nominal;
  std::vector<Rational> ratios;
  std::optional<Rational> best = bound;
  bool improved = false;

  std::function<void(std::size_t, const Rational&)> dfs =
      [&](std::size_t k, const Rational& prefix) {
        counter.tick();
        if (k == n) {
          if (!best || prefix < *best) {
            best = prefix;
            improved = true;
          }
          return;
        }
        const auto& edge_ids = cost.resolved.path_edges[k][assign[k]];
        const std::int64_t hi =
            std::min(cost.problem.contracts[k].bandwidth,
                     path_bottleneck(residual, edge_ids));
        for (std::int64_t beta = hi; beta >= 0; --beta) {
          const Rational next_prefix = prefix + cost.step(ratios, k, beta);
          for (std::size_t id : edge_ids) residual[id] -= beta;
          const Rational lb =
              next_prefix + cost.rest_bound(residual, assign, k + 1);
          if (!best || lb < *best) {
            ratios.emplace_back(beta, cost.problem.contracts[k].bandwidth);
            dfs(k + 1, next_prefix);
            ratios.pop_back();
          }
          for (std::size_t id : edge_ids) residual[id] += beta;
        }
      };
  dfs(0, Rational(0));
  return improved ? best : std::nullopt;
}

// Lexicographically smallest grant vector attaining exactly target under the
// fixed assignment. target must be attainable (the assignment's minimum).
std::vector<std::int64_t> lexmin_grants(const CostModel& cost,
                                        const std::vector<std::size_t>& assign,
                                        NodeCounter& counter,
                                        const Rational& target) {
  const std::size_t n = assign.size();
  std::vector<std::int64_t> residual = cost.resolved.nominal;
  std::vector<Rational> ratios;
  std::vector<std::int64_t> grants(n, 0);
  bool found = false;

  std::function<void(std::size_t, const Rational&)> dfs =
      [&](std::size_t k, const Rational& prefix) {
        counter.tick();
        if (k == n) {
          found = prefix == target;
          return;
        }
        const auto& edge_ids = cost.resolved.path_edges[k][assign[k]];
        const std::int64_t hi =
            std::min(cost.problem.contracts[k].bandwidth,
                     path_bottleneck(residual, edge_ids));
        for (std::int64_t beta = 0; beta <= hi && !found; ++beta) {
          const Rational next_prefix = prefix + cost.step(ratios, k, beta);
          for (std::size_t id : edge_ids) residual[id] -= beta;
          const Rational lb =
              next_prefix + cost.rest_bound(residual, assign, k + 1);
          if (lb <= target) {
            ratios.emplace_back(beta, cost.problem.contracts[k].bandwidth);
            grants[k] = beta;
            dfs(k + 1, next_prefix);
            ratios.pop_back();
          }
          for (std::size_t id : edge_ids) residual[id] += beta;
        }
      };
  dfs(0, Rational(0));
  if (!found) {
    throw std::logic_error("assignment minimum not reattained; bound logic broken");
  }
  return grants;
}

}  // namespace

std::string to_string(Objective objective) {
  switch (objective) {
    case Objective::Pescf:
      return "PESCF";
    case Objective::Escf:
      return "ESCF";
    case Objective::Edgr:
      return "EDGR";
  }
  throw std::logic_error("unreachable objective kind");
}

Objective objective_from_string(const std::string& text) {
  if (text == "PESCF") return Objective::Pescf;
  if (text == "ESCF") return Objective::Escf;
  if (text == "EDGR") return Objective::Edgr;
  throw std::invalid_argument("unknown objective \"" + text +
                              "\" (expected PESCF, ESCF, or EDGR)");
}

PlanProblem build_problem(const Network& net, std::vector<Contract> contracts,
                          int max_hops, Objective objective) {
  std::vector<std::string> issues;
  if (contracts.empty()) {
    issues.push_back("empty contract list");
  }
  for (const auto& c : contracts) {
    if (!net.has_node(c.source)) {
      issues.push_back("contract " + contract_label(c) +
                       ": unknown source node " + c.source.name);
    }
    if (!net.has_node(c.dest)) {
      issues.push_back("contract " + contract_label(c) +
                       ": unknown destination node " + c.dest.name);
    }
    if (c.source == c.dest) {
      issues.push_back("contract " + contract_label(c) +
                       ": source equals destination");
    }
    if (c.bandwidth < 1) {
      issues.push_back("contract " + contract_label(c) +
                       ": non-positive bandwidth");
    }
    if (c.priority < 1) {
      issues.push_back("contract " + contract_label(c) +
                       ": non-positive priority");
    }
  }
  if (max_hops < 1) {
    issues.push_back("max_hops must be at least 1, got " +
                     std::to_string(max_hops));
  }
  if (!issues.empty()) {
    throw ValidationError(std::move(issues));
  }

  PlanProblem problem;
  problem.net = net;
  problem.objective = objective;
  problem.contracts = std::move(contracts);
  std::sort(problem.contracts.begin(), problem.contracts.end());
  for (const auto& c : problem.contracts) {
    problem.path_sets.push_back(
        enumerate_paths(problem.net, c.source, c.dest, max_hops));
    if (problem.path_sets.back().paths.empty()) {
      issues.push_back("contract " + contract_label(c) + ": no route within " +
                       std::to_string(max_hops) + " hops");
    }
  }
  if (!issues.empty()) {
    throw ValidationError(std::move(issues));
  }
  return problem;
}

Rational objective_pescf(const PlanProblem& problem,
                         std::span<const std::int64_t> grants) {
  return squared_shortfall(problem, grants, true);
}

Rational objective_escf(const PlanProblem& problem,
                        std::span<const std::int64_t> grants) {
  return squared_shortfall(problem, grants, false);
}

Rational objective_edgr(const PlanProblem& problem,
                        std::span<const std::int64_t> grants) {
  require_grant_vector(problem, grants);
  Rational total = 0;
  for (std::size_t i = 0; i + 1 < grants.size(); ++i) {
    const Rational ratio_i(grants[i], problem.contracts[i].bandwidth);
    for (std::size_t j = i + 1; j < grants.size(); ++j) {
      const Rational diff =
          ratio_i - Rational(grants[j], problem.contracts[j].bandwidth);
      total += diff * diff;
    }
  }
  for (const std::int64_t g : grants) {
    total -= g;
  }
  return total;
}

Rational objective_value(const PlanProblem& problem,
                         std::span<const std::int64_t> grants) {
  switch (problem.objective) {
    case Objective::Pescf:
      return objective_pescf(problem, grants);
    case Objective::Escf:
      return objective_escf(problem, grants);
    case Objective::Edgr:
      return objective_edgr(problem, grants);
  }
  throw std::logic_error("unreachable objective kind");
}

std::optional<std::size_t> PlanSolution::chosen_path(
    std::size_t contract) const {
  if (contract >= path_choice.size()) {
    return std::nullopt;
  }
  std::optional<std::size_t> chosen;
  for (std::size_t m = 0; m < path_choice[contract].size(); ++m) {
    const int v = path_choice[contract][m];
    if (v == 0) {
      continue;
    }
    if (v != 1 || chosen) {
      return std::nullopt;
    }
    chosen = m;
  }
  return chosen;
}

PlanSolution solve(const PlanProblem& problem, const SolveBudget& budget) {
  const ResolvedProblem resolved(problem);
  const CostModel cost{problem, resolved};
  NodeCounter counter{0, budget.max_nodes};

  std::vector<std::size_t> assign(problem.contracts.size(), 0);
  std::optional<Rational> best_value;
  std::vector<std::size_t> best_assign;
  std::vector<std::int64_t> best_grants;

  do {
    auto value = assignment_minimum(cost, assign, counter, best_value);
    if (value) {
      best_grants = lexmin_grants(cost, assign, counter, *value);
      best_value = std::move(value);
      best_assign = assign;
    }
  } while (advance(assign, resolved.set_sizes));

  return assemble_solution(problem, best_assign, best_grants, *best_value);
}

ConstraintReport check_solution(const PlanProblem& problem,
                                const PlanSolution& solution) {
  const std::size_t n = problem.contracts.size();
  ConstraintReport report;

  auto fail = [](ConstraintCheck& check, const std::string& detail) {
    if (check.pass) {
      check.pass = false;
      check.detail = detail;
    }
  };

  // Family i: each contract selects exactly one candidate path.
  if (solution.path_choice.size() != n) {
    fail(report.single_path,
         "path_choice has " + std::to_string(solution.path_choice.size()) +
             " rows, expected " + std::to_string(n));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& row = solution.path_choice[i];
      if (row.size() != problem.path_sets[i].paths.size()) {
        fail(report.single_path,
             "contract " + std::to_string(i) + ": selection row has " +
                 std::to_string(row.size()) + " entries, expected " +
                 std::to_string(problem.path_sets[i].paths.size()));
        continue;
      }
      int ones = 0;
      bool binary = true;
      for (const int v : row) {
        if (v != 0 && v != 1) binary = false;
        if (v == 1) ++ones;
      }
      if (!binary) {
        fail(report.single_path, "contract " + std::to_string(i) +
                                     ": selection entry outside {0,1}");
      } else if (ones != 1) {
        fail(report.single_path, "contract " + std::to_string(i) +
                                     ": selects " + std::to_string(ones) +
                                     " paths");
      }
    }
  }

  auto choice_at = [&](std::size_t i, std::size_t m) -> int {
    if (i >= solution.path_choice.size()) return 0;
    if (m >= solution.path_choice[i].size()) return 0;
    return solution.path_choice[i][m];
  };
  auto path_grant_at = [&](std::size_t i, std::size_t m) -> std::int64_t {
    if (i >= solution.per_path_grant.size()) return 0;
    if (m >= solution.per_path_grant[i].size()) return 0;
    return solution.per_path_grant[i][m];
  };

  // Family ii: path grants are non-negative and flow only through the
  // selected path.
  if (solution.per_path_grant.size() != n) {
    fail(report.grant_within_choice,
         "per_path_grant has " + std::to_string(solution.per_path_grant.size()) +
             " rows, expected " + std::to_string(n));
  } else {
    for (std::size_t i = 0; i < n && report.grant_within_choice.pass; ++i) {
      const auto& row = solution.per_path_grant[i];
      if (row.size() != problem.path_sets[i].paths.size()) {
        fail(report.grant_within_choice,
             "contract " + std::to_string(i) + ": grant row has " +
                 std::to_string(row.size()) + " entries, expected " +
                 std::to_string(problem.path_sets[i].paths.size()));
        continue;
      }
      for (std::size_t m = 0; m < row.size(); ++m) {
        const std::int64_t limit =
            problem.contracts[i].bandwidth * choice_at(i, m);
        if (row[m] < 0 || row[m] > limit) {
          fail(report.grant_within_choice,
               "contract " + std::to_string(i) + ", path " + std::to_string(m) +
                   ": grant " + std::to_string(row[m]) + " outside [0, " +
                   std::to_string(limit) + "]");
          break;
        }
      }
    }
  }

  // Family iii: per-edge grants equal the path grants crossing that edge.
  if (solution.edge_grant.size() != n) {
    fail(report.edge_grant_consistent,
         "edge_grant has " + std::to_string(solution.edge_grant.size()) +
             " rows, expected " + std::to_string(n));
  } else {
    for (std::size_t i = 0; i < n && report.edge_grant_consistent.pass; ++i) {
      for (const auto& [edge, value] : solution.edge_grant[i]) {
        if (!problem.net.has_edge(edge)) {
          fail(report.edge_grant_consistent,
               "contract " + std::to_string(i) + ": grant on unknown edge " +
                   edge.src.name + " -> " + edge.dst.name);
          break;
        }
      }
      for (const auto& edge : problem.net.edges()) {
        std::int64_t expected = 0;
        for (std::size_t m = 0; m < problem.path_sets[i].paths.size(); ++m) {
          expected += edge_indicator(problem.path_sets[i], m, edge) *
                      path_grant_at(i, m);
        }
        const auto it = solution.edge_grant[i].find(edge);
        const std::int64_t actual =
            it == solution.edge_grant[i].end() ? 0 : it->second;
        if (actual != expected) {
          fail(report.edge_grant_consistent,
               "contract " + std::to_string(i) + ", edge " + edge.src.name +
                   " -> " + edge.dst.name + ": edge grant " +
                   std::to_string(actual) + ", path grants give " +
                   std::to_string(expected));
          break;
        }
      }
    }
  }

  // Family iv: aggregate edge grants within capacity.
  for (const auto& edge : problem.net.edges()) {
    std::int64_t total = 0;
    for (const auto& per_contract : solution.edge_grant) {
      const auto it = per_contract.find(edge);
      if (it != per_contract.end()) {
        total += it->second;
      }
    }
    if (total > problem.net.capacity(edge)) {
      fail(report.capacity, "edge " + edge.src.name + " -> " + edge.dst.name +
                                ": total grant " + std::to_string(total) +
                                " exceeds capacity " +
                                std::to_string(problem.net.capacity(edge)));
      break;
    }
  }

  // Family v: contract grant equals the sum of its path grants.
  if (solution.grant.size() != n) {
    fail(report.grant_total,
         "grant has " + std::to_string(solution.grant.size()) +
             " entries, expected " + std::to_string(n));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t sum = 0;
      for (std::size_t m = 0; m < problem.path_sets[i].paths.size(); ++m) {
        sum += path_grant_at(i, m);
      }
      if (solution.grant[i] != sum) {
        fail(report.grant_total, "contract " + std::to_string(i) + ": grant " +
                                     std::to_string(solution.grant[i]) +
                                     ", path grants sum to " +
                                     std::to_string(sum));
        break;
      }
      if (solution.grant[i] < 0) {
        fail(report.grant_total, "contract " + std::to_string(i) +
                                     ": negative grant " +
                                     std::to_string(solution.grant[i]));
        break;
      }
    }
  }

  // Objective recomputation needs in-range grants; families ii and v imply
  // the range, so skip quietly when they fail.
  bool in_range = solution.grant.size() == n;
  for (std::size_t i = 0; in_range && i < n; ++i) {
    in_range = solution.grant[i] >= 0 &&
               solution.grant[i] <= problem.contracts[i].bandwidth;
  }
  if (in_range) {
    report.recomputed_objective = objective_value(problem, solution.grant);
    report.objective_matches =
        report.recomputed_objective == solution.objective_value;
  }
  return report;
}

PlanSolution brute_force_solve(const PlanProblem& problem,
                               std::int64_t enumeration_bound) {
  const ResolvedProblem resolved(problem);
  BigInt size = 1;
  for (const std::size_t s : resolved.set_sizes) {
    size *= s;
  }
  for (const auto& c : problem.contracts) {
    size *= c.bandwidth + 1;
  }
  if (size > enumeration_bound) {
    throw BudgetExceeded("enumeration size " + size.str() +
                         " exceeds bound " +
                         std::to_string(enumeration_bound));
  }

  const std::size_t n = problem.contracts.size();
  std::vector<std::size_t> grant_sizes;
  for (const auto& c : problem.contracts) {
    grant_sizes.push_back(static_cast<std::size_t>(c.bandwidth) + 1);
  }

  std::optional<Rational> best_value;
  std::vector<std::size_t> best_assign;
  std::vector<std::int64_t> best_grants;

  std::vector<std::size_t> assign(n, 0);
  std::vector<std::int64_t> load(resolved.nominal.size(), 0);
  do {
    std::vector<std::size_t> raw_grants(n, 0);
    do {
      std::fill(load.begin(), load.end(), 0);
      bool feasible = true;
      for (std::size_t i = 0; i < n && feasible; ++i) {
        for (const std::size_t id : resolved.path_edges[i][assign[i]]) {
          load[id] += static_cast<std::int64_t>(raw_grants[i]);
          if (load[id] > resolved.nominal[id]) {
            feasible = false;
            break;
          }
        }
      }
      if (!feasible) {
        continue;
      }
      std::vector<std::int64_t> grants(raw_grants.begin(), raw_grants.end());
      const Rational value = objective_value(problem, grants);
      if (!best_value || value < *best_value) {
        best_value = value;
        best_assign = assign;
        best_grants = std::move(grants);
      }
    } while (advance(raw_grants, grant_sizes));
  } while (advance(assign, resolved.set_sizes));

  return assemble_solution(problem, best_assign, best_grants, *best_value);
}

}  // namespace qkdroute
