#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qkdroute/network.hpp"
#include "qkdroute/online.hpp"
#include "qkdroute/path_enum.hpp"
#include "qkdroute/plan.hpp"

namespace fixtures {

// Three-node exchange used throughout the unit tests.  Every ordered pair
// except (Q1,Q3)/(Q3,Q2) reversals has a direct edge; capacities are small
// enough that the brute-force planner stays trivial.
inline qkdroute::RawNetwork example_raw() {
  qkdroute::RawNetwork raw;
  raw.nodes = {"Q1", "Q2", "Q3"};
  raw.edges = {
      {"Q1", "Q2", 2}, {"Q1", "Q3", 2}, {"Q2", "Q1", 1},
      {"Q2", "Q3", 3}, {"Q3", "Q1", 3}, {"Q3", "Q2", 2},
  };
  return raw;
}

inline qkdroute::Network example_topology() {
  return qkdroute::Network::from_raw(example_raw());
}

inline std::vector<qkdroute::Contract> example_contracts() {
  return {
      {"Q1", "Q2", 2, 1},
      {"Q2", "Q1", 3, 10},
      {"Q2", "Q3", 2, 100},
  };
}

// Two parallel chains from s to d.  The short chain has floor(edges/2) hops,
// the long one floor(edges/2)+1; all capacities equal cap.  Mirrors the
// structure the adversary module emits so online/offline tests do not have
// to depend on the generator they are meant to cross-check.
inline qkdroute::Network two_chain_network(int top_hops, int bottom_hops,
                                           std::int64_t cap) {
  qkdroute::RawNetwork raw;
  raw.nodes = {"s", "d"};
  std::vector<std::string> top{"s"};
  for (int i = 1; i < top_hops; ++i) {
    std::string name = "t" + std::to_string(i);
    raw.nodes.push_back(name);
    top.push_back(name);
  }
  top.push_back("d");
  std::vector<std::string> bottom{"s"};
  for (int i = 1; i < bottom_hops; ++i) {
    std::string name = "b" + std::to_string(i);
    raw.nodes.push_back(name);
    bottom.push_back(name);
  }
  bottom.push_back("d");
  for (std::size_t i = 0; i + 1 < top.size(); ++i)
    raw.edges.push_back({top[i], top[i + 1], cap});
  for (std::size_t i = 0; i + 1 < bottom.size(); ++i)
    raw.edges.push_back({bottom[i], bottom[i + 1], cap});
  return qkdroute::Network::from_raw(raw);
}

struct NetworkBounds {
  int min_nodes = 2;
  int max_nodes = 5;
  int max_edges = 8;
  std::int64_t max_capacity = 6;
};

inline qkdroute::Network random_network(std::mt19937_64& rng,
                                        const NetworkBounds& bounds = {}) {
  for (;;) {
    std::uniform_int_distribution<int> node_count(bounds.min_nodes,
                                                  bounds.max_nodes);
    int n = node_count(rng);
    qkdroute::RawNetwork raw;
    for (int i = 0; i < n; ++i) raw.nodes.push_back("N" + std::to_string(i + 1));
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) pairs.emplace_back(a, b);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::uniform_int_distribution<int> edge_count(
        1, std::min<int>(bounds.max_edges, static_cast<int>(pairs.size())));
    int m = edge_count(rng);
    std::uniform_int_distribution<std::int64_t> cap(1, bounds.max_capacity);
    for (int i = 0; i < m; ++i)
      raw.edges.push_back(
          {raw.nodes[pairs[i].first], raw.nodes[pairs[i].second], cap(rng)});
    auto issues = qkdroute::validate_network(raw);
    if (issues.empty()) return qkdroute::Network::from_raw(raw);
  }
}

struct PlanBounds {
  NetworkBounds network;
  int max_contracts = 3;
  std::int64_t max_bandwidth = 4;
  int max_hops = 3;
  // Upper bound on (paths per contract) x (bandwidth+1) product so the
  // brute-force cross-check stays cheap inside fuzz loops.
  std::uint64_t max_brute_product = 20000;
};

struct PlanInstance {
  qkdroute::Network net;
  std::vector<qkdroute::Contract> contracts;
  int max_hops = 3;
};

// Draws a random planning instance whose every contract has at least one
// route and whose brute-force search space stays under the bound.
inline PlanInstance random_plan_instance(std::mt19937_64& rng,
                                         const PlanBounds& bounds = {}) {
  for (;;) {
    qkdroute::Network net = random_network(rng, bounds.network);
    std::uniform_int_distribution<int> hops(1, bounds.max_hops);
    int max_hops = hops(rng);

    std::vector<std::pair<qkdroute::NodeId, qkdroute::NodeId>> routable;
    std::vector<std::uint64_t> route_counts;
    for (const auto& a : net.nodes())
      for (const auto& b : net.nodes()) {
        if (a == b) continue;
        auto set = qkdroute::enumerate_paths(net, a, b, max_hops);
        if (!set.paths.empty()) {
          routable.emplace_back(a, b);
          route_counts.push_back(set.paths.size());
        }
      }
    if (routable.empty()) continue;

    std::uniform_int_distribution<int> contract_count(1, bounds.max_contracts);
    int c = contract_count(rng);
    std::uniform_int_distribution<std::size_t> pick(0, routable.size() - 1);
    std::uniform_int_distribution<std::int64_t> bw(1, bounds.max_bandwidth);
    std::uniform_int_distribution<std::int64_t> prio(1, 100);

    std::vector<qkdroute::Contract> contracts;
    std::set<qkdroute::Contract> seen;
    std::uint64_t product = 1;
    for (int i = 0; i < c; ++i) {
      std::size_t which = pick(rng);
      qkdroute::Contract contract{routable[which].first,
                                  routable[which].second, bw(rng), prio(rng)};
      if (!seen.insert(contract).second) continue;
      contracts.push_back(contract);
      product *= route_counts[which] *
                 static_cast<std::uint64_t>(contract.bandwidth + 1);
    }
    if (contracts.empty() || product > bounds.max_brute_product) continue;
    return {std::move(net), std::move(contracts), max_hops};
  }
}

struct TraceBounds {
  int max_requests = 10;
  std::int64_t mu = 2;
};

inline qkdroute::Trace random_trace(std::mt19937_64& rng,
                                    const qkdroute::Network& net,
                                    const TraceBounds& bounds = {}) {
  qkdroute::Trace trace;
  trace.mu = bounds.mu;
  std::uniform_int_distribution<int> count(0, bounds.max_requests);
  std::uniform_int_distribution<std::size_t> pick(0, net.nodes().size() - 1);
  std::uniform_int_distribution<std::int64_t> bits(1, bounds.mu);
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    qkdroute::NodeId src = net.nodes()[pick(rng)];
    qkdroute::NodeId dst = net.nodes()[pick(rng)];
    if (src == dst) {
      --i;
      continue;
    }
    trace.requests.push_back({src, dst, bits(rng)});
  }
  return trace;
}

}  // namespace fixtures
