#pragma once

#include "qkdroute/online.hpp"
#include "qkdroute/plan.hpp"
#include "qkdroute/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qkdroute {

struct SearchBudget {
  std::int64_t max_requests = 20;
  std::int64_t max_states = 10'000'000;
};

struct OptResult {
  std::int64_t count = 0;
  std::vector<Path> assignment;  // per request; empty path = left unserved

  bool operator==(const OptResult&) const = default;
};

// Maximum number of requests simultaneously servable with free simple-path
// choice per request, subject to aggregate per-edge load within nominal
// capacity (consumption only, no refresh). Exact; depends only on the
// multiset of requests, not their order. Memoized depth-first search over
// residual states. Throws ValidationError on a bad trace, BudgetExceeded
// when the trace is longer than budget.max_requests or the search explores
// more than budget.max_states states.
OptResult optimal_served(const Network& net, const Trace& trace,
                         const SearchBudget& budget = {});

// Served count of the assignment when it is feasible: every nonempty path
// simple, valid, endpoint-matched, and aggregate loads within nominal
// capacity. nullopt when infeasible or when sizes mismatch.
std::optional<std::int64_t> replay_served(const Network& net,
                                          const Trace& trace,
                                          const std::vector<Path>& assignment);

struct RatioReport {
  std::int64_t algorithm_served = 0;
  std::int64_t opt_served = 0;
  Rational ratio;  // algorithm_served / opt_served; 1 when opt_served = 0
  std::vector<Path> opt_assignment;
};

// Simulates the strategy (no refresh) and compares against the offline
// optimum. full_service_hint, when given, is a claimed assignment serving
// every request; if it replays feasibly and completely, the optimum is the
// trace length without search, otherwise the search runs.
RatioReport competitive_ratio(const Network& net, const Trace& trace,
                              Strategy strategy,
                              const SearchBudget& budget = {},
                              const std::vector<Path>* full_service_hint =
                                  nullptr);

}  // namespace qkdroute
