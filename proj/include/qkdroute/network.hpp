#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkdroute {

struct NodeId {
  std::string name;

  NodeId() = default;
  NodeId(std::string n) : name(std::move(n)) {}
  NodeId(const char* n) : name(n) {}

  auto operator<=>(const NodeId&) const = default;
};

// Directed edge between distinct nodes. At most one edge per ordered pair.
struct Edge {
  NodeId src;
  NodeId dst;
  auto operator<=>(const Edge&) const = default;
};

// Sequence of edges. The empty path is the rejection marker, never a route.
struct Path {
  std::vector<Edge> edges;

  Path() = default;
  Path(std::vector<Edge> e) : edges(std::move(e)) {}
  Path(std::initializer_list<Edge> e) : edges(e) {}

  bool empty() const { return edges.empty(); }
  std::size_t length() const { return edges.size(); }
  auto operator<=>(const Path&) const = default;
};

// Deterministic order for every emitted path list: shorter first, equal
// lengths by lexicographic edge-sequence comparison.
bool canonical_path_less(const Path& a, const Path& b);

using CapacityMap = std::map<Edge, std::int64_t>;

struct RawEdge {
  std::string src;
  std::string dst;
  std::int64_t capacity = 0;
};

struct RawNetwork {
  std::vector<std::string> nodes;
  std::vector<RawEdge> edges;
};

// Carries the complete list of problems found, not just the first.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

// Returns every violation in raw: dangling edge endpoints, self loops,
// duplicate edges, non-positive capacities, empty or duplicate node names.
// Empty result means the input builds.
std::vector<std::string> validate_network(const RawNetwork& raw);

// Immutable validated topology with nominal capacities.
class Network {
 public:
  Network() = default;

  // Throws ValidationError carrying validate_network(raw) when non-empty.
  static Network from_raw(const RawNetwork& raw);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const CapacityMap& capacities() const { return capacity_; }

  bool has_node(const NodeId& node) const;
  bool has_edge(const Edge& edge) const;

  // Throws std::out_of_range for an edge not in the network.
  std::int64_t capacity(const Edge& edge) const;

  // Position of edge within edges(). Throws std::out_of_range if absent.
  std::size_t edge_index(const Edge& edge) const;

  // Outgoing edges of node sorted by destination; empty for unknown nodes.
  const std::vector<Edge>& out_edges(const NodeId& node) const;

  bool operator==(const Network&) const = default;

 private:
  std::vector<NodeId> nodes_;   // sorted
  std::vector<Edge> edges_;     // sorted
  CapacityMap capacity_;
  std::map<NodeId, std::vector<Edge>> adjacency_;
};

// True when consecutive edges chain head to tail and every edge exists in
// net. The empty path is valid (it is the rejection marker).
bool is_valid_path(const Network& net, const Path& path);

// True when the visited node sequence has no repeats (empty path counts as
// simple vacuously).
bool is_simple_path(const Path& path);

// Minimum of cap over the path's edges. Throws std::invalid_argument for an
// empty or invalid path, std::out_of_range for an edge missing from cap.
std::int64_t bottleneck(const Network& net, const CapacityMap& cap,
                        const Path& path);

}  // namespace qkdroute
