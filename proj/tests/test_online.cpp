#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "qkdroute/online.hpp"
#include "support/fixtures.hpp"

using namespace qkdroute;

namespace {

// Seven edges, capacity 4: a 3-hop chain and a 4-hop chain from s to d.
// Two 2-bit head requests followed by four 1-bit requests per short-chain
// edge. Shortest-path routing burns the short chain on the heads and then
// rejects every unit request; widest-path routing diverts the second head.
Network head_and_units_net() { return fixtures::two_chain_network(3, 4, 4); }

Trace head_and_units_trace() {
  Trace trace;
  trace.mu = 2;
  trace.requests.push_back({"s", "d", 2});
  trace.requests.push_back({"s", "d", 2});
  for (const Edge& e : {Edge{"s", "t1"}, Edge{"t1", "t2"}, Edge{"t2", "d"}})
    for (int i = 0; i < 4; ++i) trace.requests.push_back({e.src, e.dst, 1});
  return trace;
}

}  // namespace

TEST_CASE("trace validation lists each defect with its request index") {
  Network net = fixtures::example_topology();
  Trace trace;
  trace.mu = 2;
  trace.requests = {
      {"Q1", "Q2", 1},   // fine
      {"QX", "Q2", 1},   // unknown source
      {"Q1", "Q1", 1},   // equal endpoints
      {"Q1", "Q2", 0},   // too few bits
      {"Q1", "Q2", 3},   // above mu
  };
  auto issues = validate_trace(net, trace);
  CHECK(issues.size() == 4);

  Trace bad_mu;
  bad_mu.mu = 0;
  CHECK(!validate_trace(net, bad_mu).empty());

  Trace empty_ok;
  empty_ok.mu = 1;
  CHECK(validate_trace(net, empty_ok).empty());
}

TEST_CASE("nominal state mirrors the network capacities") {
  Network net = fixtures::example_topology();
  BufferState state = nominal_state(net);
  for (const auto& edge : net.edges())
    CHECK(state.at(edge) == net.capacity(edge));
  CHECK_THROWS_AS((void)state.at(Edge{"Q1", "QX"}), std::out_of_range);
}

TEST_CASE("strategy names") {
  CHECK(strategy_from_string("SAP") == Strategy::Sap);
  CHECK(strategy_from_string("WSP") == Strategy::Wsp);
  CHECK(to_string(Strategy::Sap) == "SAP");
  CHECK(to_string(Strategy::Wsp) == "WSP");
  CHECK_THROWS_AS((void)strategy_from_string("sap"), std::invalid_argument);
}

TEST_CASE("shortest-path routing prefers the direct edge, then detours") {
  Network net = fixtures::example_topology();
  BufferState state = nominal_state(net);

  Path direct = sap_route(net, state, {"Q2", "Q1", 1});
  CHECK(direct == Path{{"Q2", "Q1"}});

  state.residual[{"Q2", "Q1"}] = 0;
  Path detour = sap_route(net, state, {"Q2", "Q1", 1});
  CHECK(detour == Path{{"Q2", "Q3"}, {"Q3", "Q1"}});

  state.residual[{"Q2", "Q3"}] = 0;
  CHECK(sap_route(net, state, {"Q2", "Q1", 1}).empty());
}

TEST_CASE("an edge with some residual but fewer bits than requested is unusable") {
  Network net = fixtures::example_topology();
  BufferState state = nominal_state(net);
  // (Q2,Q1) holds 1 bit; a 1-bit request fits but a 2-bit one must detour
  CHECK(sap_route(net, state, {"Q2", "Q1", 1}) == Path{{"Q2", "Q1"}});
  CHECK(sap_route(net, state, {"Q2", "Q1", 2}) ==
        Path{{"Q2", "Q3"}, {"Q3", "Q1"}});
}

TEST_CASE("equally short routes resolve in canonical edge order") {
  RawNetwork raw;
  raw.nodes = {"a", "b", "d", "s"};
  raw.edges = {{"s", "a", 1}, {"a", "d", 1}, {"s", "b", 1}, {"b", "d", 1}};
  Network net = Network::from_raw(raw);
  Path p = sap_route(net, nominal_state(net), {"s", "d", 1});
  CHECK(p == Path{{"s", "a"}, {"a", "d"}});
}

TEST_CASE("widest-path routing trades hops for bottleneck headroom") {
  RawNetwork raw;
  raw.nodes = {"s", "d", "c1", "c2"};
  raw.edges = {
      {"s", "d", 2}, {"s", "c1", 5}, {"c1", "c2", 5}, {"c2", "d", 5}};
  Network net = Network::from_raw(raw);
  BufferState state = nominal_state(net);

  CHECK(wsp_route(net, state, {"s", "d", 1}) ==
        Path{{"s", "c1"}, {"c1", "c2"}, {"c2", "d"}});
  // shortest-path routing would take the direct edge
  CHECK(sap_route(net, state, {"s", "d", 1}) == Path{{"s", "d"}});

  // equal widths: fall back to hop count
  state.residual[{"s", "c1"}] = 2;
  CHECK(wsp_route(net, state, {"s", "d", 1}) == Path{{"s", "d"}});

  // nothing wide enough: reject
  state.residual[{"s", "d"}] = 0;
  state.residual[{"c2", "d"}] = 0;
  CHECK(wsp_route(net, state, {"s", "d", 1}).empty());
}

TEST_CASE("route dispatches on the strategy") {
  Network net = fixtures::example_topology();
  BufferState state = nominal_state(net);
  Request r{"Q2", "Q1", 1};
  CHECK(route(net, state, r, Strategy::Sap) == sap_route(net, state, r));
  CHECK(route(net, state, r, Strategy::Wsp) == wsp_route(net, state, r));
}

TEST_CASE("routing never mutates the state it inspects") {
  Network net = fixtures::example_topology();
  BufferState state = nominal_state(net);
  BufferState before = state;
  (void)sap_route(net, state, {"Q1", "Q2", 2});
  (void)wsp_route(net, state, {"Q1", "Q2", 2});
  CHECK(state == before);
}

TEST_CASE("serving subtracts exactly the requested bits along the path") {
  Network net = fixtures::example_topology();
  BufferState state = nominal_state(net);
  Request r{"Q2", "Q1", 2};
  Path p{{"Q2", "Q3"}, {"Q3", "Q1"}};
  BufferState after = serve(net, state, r, p);
  CHECK(after.at(Edge{"Q2", "Q3"}) == 1);
  CHECK(after.at(Edge{"Q3", "Q1"}) == 1);
  CHECK(after.at(Edge{"Q2", "Q1"}) == 1);  // untouched
  CHECK(state.at(Edge{"Q2", "Q3"}) == 3);  // input state unchanged
}

TEST_CASE("serve refuses anything a strategy must never emit") {
  RawNetwork raw;
  raw.nodes = {"A", "B"};
  raw.edges = {{"A", "B", 2}, {"B", "A", 2}};
  Network net = Network::from_raw(raw);
  BufferState state = nominal_state(net);

  CHECK_THROWS_AS((void)serve(net, state, {"A", "B", 1}, Path{}),
                  std::logic_error);
  CHECK_THROWS_AS(
      (void)serve(net, state, {"A", "B", 1}, Path{{"A", "B"}, {"A", "B"}}),
      std::logic_error);  // edges do not chain
  CHECK_THROWS_AS(
      (void)serve(net, state, {"A", "B", 1},
                  Path{{"A", "B"}, {"B", "A"}, {"A", "B"}}),
      std::logic_error);  // revisits nodes
  CHECK_THROWS_AS((void)serve(net, state, {"B", "A", 1}, Path{{"A", "B"}}),
                  std::logic_error);  // endpoints mismatch
  CHECK_THROWS_AS((void)serve(net, state, {"A", "B", 0}, Path{{"A", "B"}}),
                  std::logic_error);  // no bits requested
  CHECK_THROWS_AS((void)serve(net, state, {"A", "B", 3}, Path{{"A", "B"}}),
                  std::logic_error);  // overdraw
}

TEST_CASE("refresh tops edges up by their rate, clamped at capacity") {
  Network net = fixtures::example_topology();
  BufferState state = nominal_state(net);
  state.residual[{"Q2", "Q3"}] = 0;
  state.residual[{"Q1", "Q2"}] = 1;

  CapacityMap rates;
  rates[{"Q2", "Q3"}] = 2;
  rates[{"Q1", "Q2"}] = 5;  // clamps at capacity 2
  BufferState after = refresh(state, net, rates);
  CHECK(after.at(Edge{"Q2", "Q3"}) == 2);
  CHECK(after.at(Edge{"Q1", "Q2"}) == 2);
  CHECK(after.at(Edge{"Q2", "Q1"}) == 1);  // no rate entry, unchanged

  CHECK(refresh(state, net, {}) == state);

  CapacityMap negative;
  negative[{"Q2", "Q3"}] = -1;
  CHECK_THROWS_AS((void)refresh(state, net, negative), std::invalid_argument);
}

TEST_CASE("shortest-path simulation starves after the head requests") {
  Network net = head_and_units_net();
  Trace trace = head_and_units_trace();
  SimulationResult result = simulate(net, trace, Strategy::Sap);
  CHECK(result.served_count == 2);
  CHECK(result.rejected_count == 12);
  Path top{{"s", "t1"}, {"t1", "t2"}, {"t2", "d"}};
  CHECK(result.decisions[0] == top);
  CHECK(result.decisions[1] == top);
  for (std::size_t i = 2; i < result.decisions.size(); ++i)
    CHECK(result.decisions[i].empty());
  CHECK(result.final_state.at(Edge{"s", "t1"}) == 0);
  CHECK(result.final_state.at(Edge{"s", "b1"}) == 4);
}

TEST_CASE("widest-path simulation diverts the second head and keeps serving") {
  Network net = head_and_units_net();
  Trace trace = head_and_units_trace();
  SimulationResult result = simulate(net, trace, Strategy::Wsp);
  Path top{{"s", "t1"}, {"t1", "t2"}, {"t2", "d"}};
  Path bottom{{"s", "b1"}, {"b1", "b2"}, {"b2", "b3"}, {"b3", "d"}};
  CHECK(result.decisions[0] == top);     // widths tie, fewer hops wins
  CHECK(result.decisions[1] == bottom);  // short chain is now narrower
  CHECK(result.served_count == 8);       // two heads + six unit requests
  CHECK(result.rejected_count == 6);
}

TEST_CASE("simulation with an empty trace does nothing") {
  Network net = fixtures::example_topology();
  Trace trace;
  trace.mu = 1;
  SimulationResult result = simulate(net, trace, Strategy::Sap);
  CHECK(result.served_count == 0);
  CHECK(result.rejected_count == 0);
  CHECK(result.final_state == nominal_state(net));
}

TEST_CASE("simulation rejects invalid traces and refresh configs") {
  Network net = fixtures::example_topology();
  Trace bad;
  bad.mu = 1;
  bad.requests = {{"Q1", "Q1", 1}};
  CHECK_THROWS_AS((void)simulate(net, bad, Strategy::Sap), ValidationError);

  Trace ok;
  ok.mu = 1;
  ok.requests = {{"Q1", "Q2", 1}};
  RefreshConfig zero_period;
  zero_period.period = 0;
  CHECK_THROWS_AS((void)simulate(net, ok, Strategy::Sap, zero_period),
                  std::invalid_argument);
  RefreshConfig unknown_edge;
  unknown_edge.rates[{"Q1", "QX"}] = 1;
  CHECK_THROWS_AS((void)simulate(net, ok, Strategy::Sap, unknown_edge),
                  std::invalid_argument);
  RefreshConfig negative;
  negative.rates[{"Q1", "Q2"}] = -2;
  CHECK_THROWS_AS((void)simulate(net, ok, Strategy::Sap, negative),
                  std::invalid_argument);
}

TEST_CASE("periodic refresh revives capacity mid-trace") {
  RawNetwork raw;
  raw.nodes = {"A", "B"};
  raw.edges = {{"A", "B", 2}};
  Network net = Network::from_raw(raw);
  Trace trace;
  trace.mu = 1;
  for (int i = 0; i < 4; ++i) trace.requests.push_back({"A", "B", 1});

  CHECK(simulate(net, trace, Strategy::Sap).served_count == 2);

  RefreshConfig every;
  every.rates[{"A", "B"}] = 1;
  every.period = 1;
  SimulationResult each = simulate(net, trace, Strategy::Sap, every);
  CHECK(each.served_count == 4);
  CHECK(each.final_state.at(Edge{"A", "B"}) == 2);  // 1 left, then topped up

  RefreshConfig alternating = every;
  alternating.period = 2;
  SimulationResult alt = simulate(net, trace, Strategy::Sap, alternating);
  // serve, serve, refresh(+1), serve, reject, refresh(+1)
  CHECK(alt.served_count == 3);
  CHECK(alt.final_state.at(Edge{"A", "B"}) == 1);
}

TEST_CASE("simulation bookkeeping holds on random instances") {
  std::mt19937_64 rng(555);
  for (int round = 0; round < 300; ++round) {
    Network net = fixtures::random_network(rng);
    Trace trace = fixtures::random_trace(rng, net);
    for (Strategy strategy : {Strategy::Sap, Strategy::Wsp}) {
      SimulationResult result = simulate(net, trace, strategy);
      REQUIRE(result.decisions.size() == trace.requests.size());
      CHECK(result.served_count + result.rejected_count ==
            static_cast<std::int64_t>(trace.requests.size()));

      // replay the decision list and confirm every claim the result makes
      BufferState state = nominal_state(net);
      for (std::size_t i = 0; i < trace.requests.size(); ++i) {
        const Request& r = trace.requests[i];
        Path fresh = route(net, state, r, strategy);
        REQUIRE(fresh == result.decisions[i]);  // deterministic and pure
        if (fresh.empty()) continue;  // mandatory acceptance: no path exists
        state = serve(net, state, r, fresh);
        for (const auto& edge : net.edges()) {
          CHECK(state.at(edge) >= 0);
          CHECK(state.at(edge) <= net.capacity(edge));
        }
      }
      CHECK(state == result.final_state);

      // conservation: exactly the served bits left the buffers
      CapacityMap spent;
      for (std::size_t i = 0; i < trace.requests.size(); ++i)
        for (const auto& edge : result.decisions[i].edges)
          spent[edge] += trace.requests[i].bits;
      for (const auto& edge : net.edges()) {
        auto it = spent.find(edge);
        std::int64_t used = it == spent.end() ? 0 : it->second;
        CHECK(net.capacity(edge) - result.final_state.at(edge) == used);
      }

      // rerunning the whole simulation reproduces the result bit for bit
      CHECK(simulate(net, trace, strategy) == result);
    }
  }
}
