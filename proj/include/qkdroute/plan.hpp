#pragma once

#include "qkdroute/path_enum.hpp"
#include "qkdroute/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qkdroute {

struct Contract {
  NodeId source;
  NodeId dest;
  std::int64_t bandwidth = 0;  // requested units, >= 1
  std::int64_t priority = 0;   // weight, >= 1

  // Defines the canonical contract order: (source, dest, bandwidth, priority).
  auto operator<=>(const Contract&) const = default;
};

enum class Objective {
  Pescf,  // priority-weighted squared shortfall
  Escf,   // unweighted squared shortfall
  Edgr,   // pairwise granted-ratio spread minus total grant
};

std::string to_string(Objective objective);

// Accepts the canonical uppercase names PESCF, ESCF, EDGR.
// Throws std::invalid_argument otherwise.
Objective objective_from_string(const std::string& text);

struct PlanProblem {
  Network net;
  std::vector<Contract> contracts;  // canonical order
  std::vector<PathSet> path_sets;   // parallel to contracts, each non-empty
  Objective objective = Objective::Pescf;
};

// Sorts contracts canonically and enumerates each contract's candidate
// paths. Throws ValidationError listing every defect: empty contract list,
// endpoint not in net, source equal to dest, non-positive bandwidth or
// priority, and each contract with no route within max_hops.
PlanProblem build_problem(const Network& net, std::vector<Contract> contracts,
                          int max_hops, Objective objective);

// Objective evaluators. grants must have one entry per contract with
// 0 <= grants[i] <= bandwidth[i]; out-of-range grants throw
// std::invalid_argument. Values are exact rationals; callers must never
// compare through floating point.
Rational objective_pescf(const PlanProblem& problem,
                         std::span<const std::int64_t> grants);
Rational objective_escf(const PlanProblem& problem,
                        std::span<const std::int64_t> grants);
Rational objective_edgr(const PlanProblem& problem,
                        std::span<const std::int64_t> grants);

// Dispatches on problem.objective.
Rational objective_value(const PlanProblem& problem,
                         std::span<const std::int64_t> grants);

// Full decision-variable assignment. path_choice is the selection matrix
// (one row per contract, one 0/1 entry per candidate path); a well-formed
// solution has exactly one 1 per row, but the type can represent broken
// states so the checker has something to reject.
struct PlanSolution {
  std::vector<std::vector<int>> path_choice;
  std::vector<std::int64_t> grant;
  std::vector<std::vector<std::int64_t>> per_path_grant;
  std::vector<CapacityMap> edge_grant;  // per contract; missing edge = 0
  Rational objective_value;

  // Index of the single selected path, or nullopt when the row does not
  // select exactly one.
  std::optional<std::size_t> chosen_path(std::size_t contract) const;

  bool operator==(const PlanSolution&) const = default;
};

struct SolveBudget {
  std::int64_t max_nodes = 10'000'000;  // search-tree node ceiling
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact minimizer over every (path assignment, integer grant) choice
// satisfying the five constraint families. Ties broken by the
// lexicographically smallest (chosen path index vector, grant vector).
// Search: path assignments in lexicographic order; per assignment a
// branch-and-bound over grants with an admissible lower bound (assigned
// cost so far plus each unassigned contract's best cost given residual
// bottlenecks). Throws BudgetExceeded past budget.max_nodes.
PlanSolution solve(const PlanProblem& problem, const SolveBudget& budget = {});

struct ConstraintCheck {
  bool pass = true;
  std::string detail;  // first violation, empty when pass
};

struct ConstraintReport {
  ConstraintCheck single_path;            // i: one path selected per contract
  ConstraintCheck grant_within_choice;    // ii: path grants only on selection
  ConstraintCheck edge_grant_consistent;  // iii: edge grants match path grants
  ConstraintCheck capacity;               // iv: per-edge totals within k
  ConstraintCheck grant_total;            // v: grant equals path-grant sum
  Rational recomputed_objective;
  bool objective_matches = false;

  bool all_pass() const {
    return single_path.pass && grant_within_choice.pass &&
           edge_grant_consistent.pass && capacity.pass && grant_total.pass;
  }
};

// Evaluates each constraint family independently (never throws); recomputes
// the objective from the grant vector when ranges permit.
ConstraintReport check_solution(const PlanProblem& problem,
                                const PlanSolution& solution);

// Independent oracle: enumerates the full cross product of path assignments
// and grant vectors (0..bandwidth per contract), filters by capacity, keeps
// the minimum with solve's tie-break. Shares no search code with solve.
// Throws BudgetExceeded when the enumeration size
// (product of path-set sizes x product of (bandwidth+1)) exceeds the bound.
PlanSolution brute_force_solve(const PlanProblem& problem,
                               std::int64_t enumeration_bound = 10'000'000);

}  // namespace qkdroute
