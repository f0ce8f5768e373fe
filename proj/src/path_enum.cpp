#include "qkdroute/path_enum.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qkdroute {

PathSet enumerate_paths(const Network& net, const NodeId& source,
                        const NodeId& dest, int max_hops) {
  if (!net.has_node(source)) {
    throw std::invalid_argument("unknown source node: " + source.name);
  }
  if (!net.has_node(dest)) {
    throw std::invalid_argument("unknown destination node: " + dest.name);
  }
  if (source == dest) {
    throw std::invalid_argument("source equals destination: " + source.name);
  }
  if (max_hops < 1) {
    throw std::invalid_argument("max_hops must be at least 1, got " +
                                std::to_string(max_hops));
  }

  PathSet result{source, dest, max_hops, {}};
  std::vector<Edge> stack;
  std::set<NodeId> on_path{source};

  auto dfs = [&](auto&& self, const NodeId& at) -> void {
    if (at == dest) {
      result.paths.push_back(Path{stack});
      return;
    }
    if (static_cast<int>(stack.size()) == max_hops) {
      return;
    }
    for (const auto& edge : net.out_edges(at)) {
      if (on_path.count(edge.dst)) {
        continue;
      }
      stack.push_back(edge);
      on_path.insert(edge.dst);
      self(self, edge.dst);
      on_path.erase(edge.dst);
      stack.pop_back();
    }
  };
  dfs(dfs, source);

  std::sort(result.paths.begin(), result.paths.end(), canonical_path_less);
  return result;
}

int edge_indicator(const PathSet& set, std::size_t m, const Edge& edge) {
  if (m >= set.paths.size()) {
    throw std::out_of_range("path index " + std::to_string(m) +
                            " out of range for path set of size " +
                            std::to_string(set.paths.size()));
  }
  const auto& edges = set.paths[m].edges;
  return std::find(edges.begin(), edges.end(), edge) != edges.end() ? 1 : 0;
}

}  // namespace qkdroute
