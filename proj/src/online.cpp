#include "qkdroute/online.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

namespace qkdroute {

namespace {

constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

// Hop distance from every node to dest using only edges admitted by the
// filter. Reverse breadth-first search.
template <typename EdgeFilter>
std::map<NodeId, std::int64_t> distance_to(const Network& net,
                                           const NodeId& dest,
                                           EdgeFilter admit) {
  std::map<NodeId, std::vector<Edge>> incoming;
  for (const auto& edge : net.edges()) {
    if (admit(edge)) {
      incoming[edge.dst].push_back(edge);
    }
  }
  std::map<NodeId, std::int64_t> dist;
  dist[dest] = 0;
  std::deque<NodeId> queue{dest};
  while (!queue.empty()) {
    const NodeId at = queue.front();
    queue.pop_front();
    for (const auto& edge : incoming[at]) {
      if (!dist.count(edge.src)) {
        dist[edge.src] = dist[at] + 1;
        queue.push_back(edge.src);
      }
    }
  }
  return dist;
}

// Lexicographically smallest minimum-hop path from source to dest inside the
// admitted subgraph; empty path when dest is unreachable. Out-edges are
// stored sorted, so taking the first edge that stays on a shortest route
// yields the canonical tie-break. Distances strictly decrease along the walk,
// so the result is simple by construction.
template <typename EdgeFilter>
Path shortest_admitted(const Network& net, const NodeId& source,
                       const NodeId& dest, EdgeFilter admit) {
  const auto dist = distance_to(net, dest, admit);
  const auto start = dist.find(source);
  if (start == dist.end() || start->second == 0) {
    return {};
  }
  Path path;
  NodeId at = source;
  std::int64_t remaining = start->second;
  while (remaining > 0) {
    bool stepped = false;
    for (const auto& edge : net.out_edges(at)) {
      if (!admit(edge)) {
        continue;
      }
      const auto next = dist.find(edge.dst);
      if (next != dist.end() && next->second == remaining - 1) {
        path.edges.push_back(edge);
        at = edge.dst;
        --remaining;
        stepped = true;
        break;
      }
    }
    if (!stepped) {
      throw std::logic_error("shortest-path reconstruction lost the route");
    }
  }
  return path;
}

template <typename EdgeFilter>
bool reaches(const Network& net, const NodeId& source, const NodeId& dest,
             EdgeFilter admit) {
  const auto dist = distance_to(net, dest, admit);
  return dist.count(source) != 0;
}

void require_refresh_config(const Network& net, const RefreshConfig& config) {
  if (config.period < 1) {
    throw std::invalid_argument("refresh period must be positive, got " +
                                std::to_string(config.period));
  }
  for (const auto& [edge, rate] : config.rates) {
    if (!net.has_edge(edge)) {
      throw std::invalid_argument("refresh rate on unknown edge: " +
                                  edge.src.name + " -> " + edge.dst.name);
    }
    if (rate < 0) {
      throw std::invalid_argument(
          "negative refresh rate on edge " + edge.src.name + " -> " +
          edge.dst.name + ": " + std::to_string(rate));
    }
  }
}

}  // namespace

std::vector<std::string> validate_trace(const Network& net,
                                        const Trace& trace) {
  std::vector<std::string> issues;
  if (trace.mu < 1) {
    issues.push_back("mu must be positive, got " + std::to_string(trace.mu));
  }
  for (std::size_t i = 0; i < trace.requests.size(); ++i) {
    const auto& r = trace.requests[i];
    const std::string label = "request " + std::to_string(i);
    if (!net.has_node(r.source)) {
      issues.push_back(label + ": unknown source node " + r.source.name);
    }
    if (!net.has_node(r.dest)) {
      issues.push_back(label + ": unknown destination node " + r.dest.name);
    }
    if (r.source == r.dest) {
      issues.push_back(label + ": source equals destination");
    }
    if (r.bits < 1 || (trace.mu >= 1 && r.bits > trace.mu)) {
      issues.push_back(label + ": bits " + std::to_string(r.bits) +
                       " outside [1, " + std::to_string(trace.mu) + "]");
    }
  }
  return issues;
}

std::int64_t BufferState::at(const Edge& edge) const {
  const auto it = residual.find(edge);
  if (it == residual.end()) {
    throw std::out_of_range("no residual entry for edge " + edge.src.name +
                            " -> " + edge.dst.name);
  }
  return it->second;
}

BufferState nominal_state(const Network& net) {
  return BufferState{net.capacities()};
}

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::Sap:
      return "SAP";
    case Strategy::Wsp:
      return "WSP";
  }
  throw std::logic_error("unreachable strategy kind");
}

Strategy strategy_from_string(const std::string& text) {
  if (text == "SAP") return Strategy::Sap;
  if (text == "WSP") return Strategy::Wsp;
  throw std::invalid_argument("unknown strategy \"" + text +
                              "\" (expected SAP or WSP)");
}

Path sap_route(const Network& net, const BufferState& state,
               const Request& r) {
  if (r.source == r.dest) {
    return {};
  }
  const auto available = [&](const Edge& edge) {
    return state.at(edge) >= r.bits;
  };
  return shortest_admitted(net, r.source, r.dest, available);
}

Path wsp_route(const Network& net, const BufferState& state,
               const Request& r) {
  if (r.source == r.dest) {
    return {};
  }
  // Candidate widths are the distinct residuals able to carry the request;
  // reachability over {residual >= width} is antitone in width, so binary
  // search finds the widest connected threshold.
  std::vector<std::int64_t> widths;
  for (const auto& [edge, residual] : state.residual) {
    if (residual >= r.bits) {
      widths.push_back(residual);
    }
  }
  std::sort(widths.begin(), widths.end());
  widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
  if (widths.empty()) {
    return {};
  }

  const auto admits = [&](std::int64_t width) {
    return [&state, width](const Edge& edge) {
      return state.at(edge) >= width;
    };
  };
  std::size_t lo = 0;
  std::size_t hi = widths.size() - 1;
  std::optional<std::size_t> widest;
  while (lo <= hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (reaches(net, r.source, r.dest, admits(widths[mid]))) {
      widest = mid;
      lo = mid + 1;
    } else {
      if (mid == 0) {
        break;
      }
      hi = mid - 1;
    }
  }
  if (!widest) {
    return {};
  }
  return shortest_admitted(net, r.source, r.dest, admits(widths[*widest]));
}

Path route(const Network& net, const BufferState& state, const Request& r,
           Strategy strategy) {
  switch (strategy) {
    case Strategy::Sap:
      return sap_route(net, state, r);
    case Strategy::Wsp:
      return wsp_route(net, state, r);
  }
  throw std::logic_error("unreachable strategy kind");
}

BufferState serve(const Network& net, const BufferState& state,
                  const Request& r, const Path& path) {
  if (path.empty()) {
    throw std::logic_error("serve called with the rejection path");
  }
  if (!is_valid_path(net, path)) {
    throw std::logic_error("serve called with an invalid path");
  }
  if (!is_simple_path(path)) {
    throw std::logic_error("serve called with a non-simple path");
  }
  if (path.edges.front().src != r.source || path.edges.back().dst != r.dest) {
    throw std::logic_error("serve called with mismatched path endpoints");
  }
  if (r.bits < 1) {
    throw std::logic_error("serve called with non-positive bits");
  }
  BufferState next = state;
  for (const auto& edge : path.edges) {
    auto it = next.residual.find(edge);
    if (it == next.residual.end() || it->second < r.bits) {
      throw std::logic_error("serve would overdraw edge " + edge.src.name +
                             " -> " + edge.dst.name);
    }
    it->second -= r.bits;
  }
  return next;
}

BufferState refresh(const BufferState& state, const Network& net,
                    const CapacityMap& rates) {
  BufferState next = state;
  for (auto& [edge, residual] : next.residual) {
    const auto it = rates.find(edge);
    if (it == rates.end()) {
      continue;
    }
    if (it->second < 0) {
      throw std::invalid_argument("negative refresh rate on edge " +
                                  edge.src.name + " -> " + edge.dst.name);
    }
    const std::int64_t cap = net.capacity(edge);
    // Clamp without forming residual + rate, which may overflow.
    residual = cap - residual <= it->second ? cap : residual + it->second;
  }
  return next;
}

SimulationResult simulate(const Network& net, const Trace& trace,
                          Strategy strategy,
                          const std::optional<RefreshConfig>& refresh_config) {
  auto issues = validate_trace(net, trace);
  if (!issues.empty()) {
    throw ValidationError(std::move(issues));
  }
  if (refresh_config) {
    require_refresh_config(net, *refresh_config);
  }

  SimulationResult result;
  result.final_state = nominal_state(net);
  for (std::size_t i = 0; i < trace.requests.size(); ++i) {
    const auto& r = trace.requests[i];
    Path path = route(net, result.final_state, r, strategy);
    if (path.empty()) {
      ++result.rejected_count;
    } else {
      result.final_state = serve(net, result.final_state, r, path);
      ++result.served_count;
    }
    result.decisions.push_back(std::move(path));
    if (refresh_config &&
        static_cast<std::int64_t>(i + 1) % refresh_config->period == 0) {
      result.final_state =
          refresh(result.final_state, net, refresh_config->rates);
    }
  }
  return result;
}

}  // namespace qkdroute
