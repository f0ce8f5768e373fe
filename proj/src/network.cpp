#include "qkdroute/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qkdroute {

namespace {

std::string issue_summary(const std::vector<std::string>& issues) {
  std::ostringstream out;
  out << "invalid network (" << issues.size() << " issue"
      << (issues.size() == 1 ? "" : "s") << ")";
  for (const auto& issue : issues) {
    out << "; " << issue;
  }
  return out.str();
}

}  // namespace

bool canonical_path_less(const Path& a, const Path& b) {
  if (a.edges.size() != b.edges.size()) {
    return a.edges.size() < b.edges.size();
  }
  return a.edges < b.edges;
}

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::runtime_error(issue_summary(issues)), issues_(std::move(issues)) {}

std::vector<std::string> validate_network(const RawNetwork& raw) {
  std::vector<std::string> issues;
  std::set<std::string> names;
  for (const auto& name : raw.nodes) {
    if (name.empty()) {
      issues.push_back("empty node name");
    } else if (!names.insert(name).second) {
      issues.push_back("duplicate node name: " + name);
    }
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& edge : raw.edges) {
    const std::string label = edge.src + " -> " + edge.dst;
    if (!names.count(edge.src)) {
      issues.push_back("edge endpoint not declared as node: " + edge.src +
                       " (edge " + label + ")");
    }
    if (!names.count(edge.dst)) {
      issues.push_back("edge endpoint not declared as node: " + edge.dst +
                       " (edge " + label + ")");
    }
    if (edge.src == edge.dst) {
      issues.push_back("self loop: " + label);
    }
    if (!seen.insert({edge.src, edge.dst}).second) {
      issues.push_back("duplicate edge: " + label);
    }
    if (edge.capacity <= 0) {
      issues.push_back("non-positive capacity on edge " + label + ": " +
                       std::to_string(edge.capacity));
    }
  }
  return issues;
}

Network Network::from_raw(const RawNetwork& raw) {
  auto issues = validate_network(raw);
  if (!issues.empty()) {
    throw ValidationError(std::move(issues));
  }
  Network net;
  for (const auto& name : raw.nodes) {
    net.nodes_.push_back(NodeId{name});
  }
  std::sort(net.nodes_.begin(), net.nodes_.end());
  for (const auto& raw_edge : raw.edges) {
    Edge edge{NodeId{raw_edge.src}, NodeId{raw_edge.dst}};
    net.edges_.push_back(edge);
    net.capacity_[edge] = raw_edge.capacity;
  }
  std::sort(net.edges_.begin(), net.edges_.end());
  for (const auto& node : net.nodes_) {
    net.adjacency_[node] = {};
  }
  for (const auto& edge : net.edges_) {
    net.adjacency_[edge.src].push_back(edge);
  }
  return net;
}

bool Network::has_node(const NodeId& node) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), node);
}

bool Network::has_edge(const Edge& edge) const {
  return capacity_.count(edge) != 0;
}

std::int64_t Network::capacity(const Edge& edge) const {
  auto it = capacity_.find(edge);
  if (it == capacity_.end()) {
    throw std::out_of_range("no such edge: " + edge.src.name + " -> " +
                            edge.dst.name);
  }
  return it->second;
}

std::size_t Network::edge_index(const Edge& edge) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), edge);
  if (it == edges_.end() || *it != edge) {
    throw std::out_of_range("no such edge: " + edge.src.name + " -> " +
                            edge.dst.name);
  }
  return static_cast<std::size_t>(it - edges_.begin());
}

const std::vector<Edge>& Network::out_edges(const NodeId& node) const {
  static const std::vector<Edge> kEmpty;
  auto it = adjacency_.find(node);
  return it == adjacency_.end() ? kEmpty : it->second;
}

bool is_valid_path(const Network& net, const Path& path) {
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    if (!net.has_edge(path.edges[i])) {
      return false;
    }
    if (i > 0 && path.edges[i - 1].dst != path.edges[i].src) {
      return false;
    }
  }
  return true;
}

bool is_simple_path(const Path& path) {
  if (path.empty()) {
    return true;
  }
  std::set<NodeId> seen{path.edges.front().src};
  for (const auto& edge : path.edges) {
    if (!seen.insert(edge.dst).second) {
      return false;
    }
  }
  return true;
}

std::int64_t bottleneck(const Network& net, const CapacityMap& cap,
                        const Path& path) {
  if (path.empty()) {
    throw std::invalid_argument("bottleneck of empty path");
  }
  if (!is_valid_path(net, path)) {
    throw std::invalid_argument("bottleneck of invalid path");
  }
  std::int64_t best = 0;
  bool first = true;
  for (const auto& edge : path.edges) {
    auto it = cap.find(edge);
    if (it == cap.end()) {
      throw std::out_of_range("edge missing from capacity map: " +
                              edge.src.name + " -> " + edge.dst.name);
    }
    best = first ? it->second : std::min(best, it->second);
    first = false;
  }
  return best;
}

}  // namespace qkdroute
