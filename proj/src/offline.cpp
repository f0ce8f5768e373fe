#include "qkdroute/offline.hpp"

#include "qkdroute/path_enum.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace qkdroute {

namespace {

// Memoized search over (request index, residual vector). Values are exact:
// pruning only skips branches that provably cannot beat the running best of
// the same state, so memo entries are true optima and the reconstruction
// walk can re-query them.
struct OptSearch {
  const Network& net;
  std::vector<std::int64_t> bits;
  std::vector<std::vector<std::vector<std::size_t>>> edge_ids;  // per request
  std::vector<std::vector<const Path*>> paths;                  // parallel
  std::vector<std::int64_t> nominal;
  std::vector<std::map<std::vector<std::int64_t>, std::int64_t>> memo;
  std::int64_t states = 0;
  std::int64_t max_states = 0;

  OptSearch(const Network& network, const Trace& trace,
            const std::vector<PathSet>& per_request_sets,
            std::int64_t state_budget)
      : net(network), max_states(state_budget) {
    for (const auto& edge : net.edges()) {
      nominal.push_back(net.capacity(edge));
    }
    for (std::size_t i = 0; i < trace.requests.size(); ++i) {
      bits.push_back(trace.requests[i].bits);
      auto& ids = edge_ids.emplace_back();
      auto& kept = paths.emplace_back();
      for (const auto& path : per_request_sets[i].paths) {
        bool wide_enough = true;
        std::vector<std::size_t> resolved;
        for (const auto& edge : path.edges) {
          const std::size_t id = net.edge_index(edge);
          wide_enough = wide_enough && nominal[id] >= bits.back();
          resolved.push_back(id);
        }
        if (wide_enough) {
          ids.push_back(std::move(resolved));
          kept.push_back(&path);
        }
      }
    }
    memo.resize(trace.requests.size());
  }

  std::int64_t best(std::size_t depth, std::vector<std::int64_t>& residual) {
    if (depth == bits.size()) {
      return 0;
    }
    auto [it, fresh] = memo[depth].try_emplace(residual, 0);
    if (!fresh) {
      return it->second;
    }
    if (++states > max_states) {
      throw BudgetExceeded("offline optimum exceeded state budget of " +
                           std::to_string(max_states));
    }
    const std::int64_t remaining =
        static_cast<std::int64_t>(bits.size() - depth);
    std::int64_t value = 0;
    for (const auto& ids : edge_ids[depth]) {
      const bool feasible = std::all_of(
          ids.begin(), ids.end(),
          [&](std::size_t id) { return residual[id] >= bits[depth]; });
      if (!feasible) {
        continue;
      }
      for (const std::size_t id : ids) residual[id] -= bits[depth];
      value = std::max(value, 1 + best(depth + 1, residual));
      for (const std::size_t id : ids) residual[id] += bits[depth];
      if (value == remaining) {
        break;
      }
    }
    // Skipping caps the take at remaining - 1, so it only matters below that.
    if (value < remaining - 1) {
      value = std::max(value, best(depth + 1, residual));
    }
    // try_emplace's iterator may be stale after recursive inserts.
    memo[depth][residual] = value;
    return value;
  }

  // First branch (serve in canonical path order, then skip) matching the
  // memoized optimum; deterministic.
  std::vector<Path> reconstruct() {
    std::vector<Path> assignment(bits.size());
    std::vector<std::int64_t> residual = nominal;
    for (std::size_t depth = 0; depth < bits.size(); ++depth) {
      const std::int64_t want = best(depth, residual);
      bool taken = false;
      for (std::size_t p = 0; p < edge_ids[depth].size() && !taken; ++p) {
        const auto& ids = edge_ids[depth][p];
        const bool feasible = std::all_of(
            ids.begin(), ids.end(),
            [&](std::size_t id) { return residual[id] >= bits[depth]; });
        if (!feasible) {
          continue;
        }
        for (const std::size_t id : ids) residual[id] -= bits[depth];
        if (1 + best(depth + 1, residual) == want) {
          assignment[depth] = *paths[depth][p];
          taken = true;
        } else {
          for (const std::size_t id : ids) residual[id] += bits[depth];
        }
      }
      // No serving branch attains the optimum, so skipping does.
    }
    return assignment;
  }
};

}  // namespace

OptResult optimal_served(const Network& net, const Trace& trace,
                         const SearchBudget& budget) {
  auto issues = validate_trace(net, trace);
  if (!issues.empty()) {
    throw ValidationError(std::move(issues));
  }
  if (static_cast<std::int64_t>(trace.requests.size()) > budget.max_requests) {
    throw BudgetExceeded("offline optimum over " +
                         std::to_string(trace.requests.size()) +
                         " requests exceeds budget of " +
                         std::to_string(budget.max_requests));
  }

  // Free path choice: every simple valid path, so the hop ceiling is the
  // longest simple path possible.
  const int max_hops = std::max(1, static_cast<int>(net.nodes().size()) - 1);
  std::map<std::pair<NodeId, NodeId>, PathSet> by_endpoints;
  std::vector<PathSet> per_request;
  for (const auto& r : trace.requests) {
    const auto key = std::make_pair(r.source, r.dest);
    auto it = by_endpoints.find(key);
    if (it == by_endpoints.end()) {
      it = by_endpoints
               .emplace(key, enumerate_paths(net, r.source, r.dest, max_hops))
               .first;
    }
    per_request.push_back(it->second);
  }

  OptSearch search(net, trace, per_request, budget.max_states);
  std::vector<std::int64_t> residual = search.nominal;
  OptResult result;
  result.count = search.best(0, residual);
  result.assignment = search.reconstruct();
  return result;
}

std::optional<std::int64_t> replay_served(
    const Network& net, const Trace& trace,
    const std::vector<Path>& assignment) {
  if (assignment.size() != trace.requests.size()) {
    return std::nullopt;
  }
  CapacityMap load;
  std::int64_t count = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const auto& path = assignment[i];
    if (path.empty()) {
      continue;
    }
    const auto& r = trace.requests[i];
    if (!is_valid_path(net, path) || !is_simple_path(path) ||
        path.edges.front().src != r.source ||
        path.edges.back().dst != r.dest) {
      return std::nullopt;
    }
    for (const auto& edge : path.edges) {
      load[edge] += r.bits;
    }
    ++count;
  }
  for (const auto& [edge, total] : load) {
    if (total > net.capacity(edge)) {
      return std::nullopt;
    }
  }
  return count;
}

RatioReport competitive_ratio(const Network& net, const Trace& trace,
                              Strategy strategy, const SearchBudget& budget,
                              const std::vector<Path>* full_service_hint) {
  const SimulationResult sim = simulate(net, trace, strategy);

  RatioReport report;
  report.algorithm_served = sim.served_count;
  if (full_service_hint) {
    const auto replayed = replay_served(net, trace, *full_service_hint);
    if (replayed &&
        *replayed == static_cast<std::int64_t>(trace.requests.size())) {
      report.opt_served = *replayed;
      report.opt_assignment = *full_service_hint;
    }
  }
  if (report.opt_assignment.empty() && !trace.requests.empty()) {
    OptResult opt = optimal_served(net, trace, budget);
    report.opt_served = opt.count;
    report.opt_assignment = std::move(opt.assignment);
  }
  report.ratio = report.opt_served == 0
                     ? Rational(1)
                     : Rational(report.algorithm_served, report.opt_served);
  return report;
}

}  // namespace qkdroute
