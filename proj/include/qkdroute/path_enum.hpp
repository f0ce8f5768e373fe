#pragma once

#include "qkdroute/network.hpp"

#include <cstddef>
#include <vector>

namespace qkdroute {

// All simple valid paths from source to dest within the hop bound, in
// canonical order. Completeness within the bound is part of the contract.
struct PathSet {
  NodeId source;
  NodeId dest;
  int max_hops = 0;
  std::vector<Path> paths;

  bool operator==(const PathSet&) const = default;
};

// Throws std::invalid_argument when source or dest is unknown, they are
// equal, or max_hops < 1.
PathSet enumerate_paths(const Network& net, const NodeId& source,
                        const NodeId& dest, int max_hops);

// 1 when edge lies on paths[m], else 0. Throws std::out_of_range on a bad
// path index.
int edge_indicator(const PathSet& set, std::size_t m, const Edge& edge);

}  // namespace qkdroute
