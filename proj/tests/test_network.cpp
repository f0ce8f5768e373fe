#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "qkdroute/network.hpp"
#include "support/fixtures.hpp"

using namespace qkdroute;

namespace {

bool mentions(const std::vector<std::string>& issues, const std::string& needle) {
  for (const auto& issue : issues)
    if (issue.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("a well-formed description validates cleanly") {
  CHECK(validate_network(fixtures::example_raw()).empty());
}

TEST_CASE("validation reports every defect, not just the first") {
  RawNetwork raw;
  raw.nodes = {"A", "B", "A", ""};
  raw.edges = {
      {"A", "A", 1},   // self loop
      {"A", "B", 0},   // non-positive capacity
      {"A", "B", 2},   // duplicate of the edge above
      {"A", "C", 1},   // dangling endpoint
  };
  auto issues = validate_network(raw);
  CHECK(issues.size() >= 5);
  CHECK(mentions(issues, "duplicate node"));
  CHECK(mentions(issues, "empty"));
  CHECK(mentions(issues, "self loop"));
  CHECK(mentions(issues, "capacity"));
  CHECK(mentions(issues, "duplicate edge"));
  CHECK(mentions(issues, "not declared"));
}

TEST_CASE("from_raw rejects invalid input with the full issue list") {
  RawNetwork raw;
  raw.nodes = {"A"};
  raw.edges = {{"A", "B", 1}, {"A", "A", 1}};
  CHECK_THROWS_AS((void)Network::from_raw(raw), ValidationError);
  try {
    (void)Network::from_raw(raw);
  } catch (const ValidationError& err) {
    CHECK(err.issues().size() >= 2);
  }
}

TEST_CASE("nodes and edges come back in canonical sorted order") {
  RawNetwork raw;
  raw.nodes = {"Q3", "Q1", "Q2"};
  raw.edges = {{"Q3", "Q1", 3}, {"Q1", "Q2", 2}, {"Q2", "Q1", 1}};
  Network net = Network::from_raw(raw);
  CHECK(net.nodes() == std::vector<NodeId>{"Q1", "Q2", "Q3"});
  std::vector<Edge> expect{{"Q1", "Q2"}, {"Q2", "Q1"}, {"Q3", "Q1"}};
  CHECK(net.edges() == expect);
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(net.edge_index(expect[i]) == i);
}

TEST_CASE("capacity lookup matches the input and rejects unknown edges") {
  Network net = fixtures::example_topology();
  CHECK(net.capacity({"Q1", "Q2"}) == 2);
  CHECK(net.capacity({"Q2", "Q1"}) == 1);
  CHECK(net.capacity({"Q2", "Q3"}) == 3);
  CHECK(net.capacity({"Q3", "Q1"}) == 3);
  CHECK_THROWS_AS((void)net.capacity({"Q2", "Q2"}), std::out_of_range);
  CHECK_THROWS_AS((void)net.capacity({"Q1", "QX"}), std::out_of_range);
}

TEST_CASE("membership checks") {
  Network net = fixtures::example_topology();
  CHECK(net.has_node("Q1"));
  CHECK_FALSE(net.has_node("Q9"));
  CHECK(net.has_edge({"Q1", "Q3"}));
  CHECK_FALSE(net.has_edge({"Q3", "Q3"}));
}

TEST_CASE("out_edges is sorted by destination and empty for unknown nodes") {
  Network net = fixtures::example_topology();
  const auto& out = net.out_edges("Q2");
  REQUIRE(out.size() == 2);
  CHECK(out[0] == Edge{"Q2", "Q1"});
  CHECK(out[1] == Edge{"Q2", "Q3"});
  CHECK(net.out_edges("nope").empty());
}

TEST_CASE("the empty path is valid; chained edges must exist and connect") {
  Network net = fixtures::example_topology();
  CHECK(is_valid_path(net, {}));
  CHECK(is_valid_path(net, {{"Q1", "Q2"}}));
  CHECK(is_valid_path(net, {{"Q1", "Q3"}, {"Q3", "Q2"}}));
  // gap between consecutive edges
  CHECK_FALSE(is_valid_path(net, {{"Q1", "Q2"}, {"Q3", "Q1"}}));
  // edge not present in the network
  CHECK_FALSE(is_valid_path(net, {{"Q2", "Q2"}}));
  CHECK_FALSE(is_valid_path(net, {{"Q1", "QX"}}));
}

TEST_CASE("simplicity means no repeated node, endpoints included") {
  CHECK(is_simple_path({}));
  CHECK(is_simple_path({{"Q1", "Q3"}, {"Q3", "Q2"}}));
  CHECK_FALSE(is_simple_path({{"Q1", "Q2"}, {"Q2", "Q1"}}));
  CHECK_FALSE(is_simple_path({{"Q1", "Q2"}, {"Q2", "Q3"}, {"Q3", "Q1"}}));
}

TEST_CASE("bottleneck is the minimum residual along the path") {
  Network net = fixtures::example_topology();
  CapacityMap nominal;
  for (const auto& e : net.edges()) nominal[e] = net.capacity(e);
  CHECK(bottleneck(net, nominal, {{"Q2", "Q3"}, {"Q3", "Q1"}}) == 3);
  CHECK(bottleneck(net, nominal, {{"Q2", "Q1"}}) == 1);
  nominal[{"Q3", "Q1"}] = 0;
  CHECK(bottleneck(net, nominal, {{"Q2", "Q3"}, {"Q3", "Q1"}}) == 0);
}

TEST_CASE("bottleneck preconditions") {
  Network net = fixtures::example_topology();
  CapacityMap nominal;
  for (const auto& e : net.edges()) nominal[e] = net.capacity(e);
  CHECK_THROWS_AS((void)bottleneck(net, nominal, {}), std::invalid_argument);
  CHECK_THROWS_AS(
      (void)bottleneck(net, nominal, {{"Q1", "Q2"}, {"Q3", "Q1"}}),
      std::invalid_argument);
  CapacityMap missing;
  CHECK_THROWS_AS((void)bottleneck(net, missing, {{"Q1", "Q2"}}),
                  std::out_of_range);
}

TEST_CASE("canonical path order: length first, then lexicographic edges") {
  Path direct{{"Q1", "Q2"}};
  Path detour{{"Q1", "Q3"}, {"Q3", "Q2"}};
  Path other{{"Q2", "Q3"}};
  CHECK(canonical_path_less(direct, detour));
  CHECK_FALSE(canonical_path_less(detour, direct));
  CHECK(canonical_path_less(direct, other));
  CHECK_FALSE(canonical_path_less(direct, direct));
  // same length: compare edge sequences lexicographically
  Path a{{"Q1", "Q2"}, {"Q2", "Q3"}};
  Path b{{"Q1", "Q3"}, {"Q3", "Q2"}};
  CHECK(canonical_path_less(a, b));
}

TEST_CASE("edge ordering is lexicographic on (src, dst)") {
  CHECK(Edge{"Q1", "Q2"} < Edge{"Q1", "Q3"});
  CHECK(Edge{"Q1", "Q3"} < Edge{"Q2", "Q1"});
  CHECK(Edge{"Q1", "Q2"} == Edge{"Q1", "Q2"});
}
