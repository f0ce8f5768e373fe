#pragma once

#include "qkdroute/network.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qkdroute {

struct Request {
  NodeId source;
  NodeId dest;
  std::int64_t bits = 0;  // 1 <= bits <= trace mu

  auto operator<=>(const Request&) const = default;
};

struct Trace {
  std::int64_t mu = 0;  // per-request bit ceiling
  std::vector<Request> requests;

  bool operator==(const Trace&) const = default;
};

// Every problem with the trace against the network: non-positive mu,
// unknown endpoints, equal endpoints, bits outside [1, mu].
std::vector<std::string> validate_trace(const Network& net, const Trace& trace);

// Remaining key bits per edge. Residuals stay within [0, nominal capacity].
struct BufferState {
  CapacityMap residual;

  // Throws std::out_of_range for an edge without an entry.
  std::int64_t at(const Edge& edge) const;

  bool operator==(const BufferState&) const = default;
};

// Fresh state: every edge at nominal capacity.
BufferState nominal_state(const Network& net);

enum class Strategy { Sap, Wsp };

std::string to_string(Strategy strategy);

// Accepts the canonical uppercase names SAP, WSP.
Strategy strategy_from_string(const std::string& text);

// Minimum-hop simple valid path whose every edge has residual >= r.bits;
// ties by canonical path order; empty path when none exists.
Path sap_route(const Network& net, const BufferState& state, const Request& r);

// Among simple valid paths with every edge residual >= r.bits: maximum
// bottleneck residual first, then fewest hops, then canonical order; empty
// path when none exists. Width dominates length.
Path wsp_route(const Network& net, const BufferState& state, const Request& r);

Path route(const Network& net, const BufferState& state, const Request& r,
           Strategy strategy);

// New state with r.bits subtracted along path. Throws std::logic_error when
// the path is empty, not valid/simple, endpoints mismatch, or any edge lacks
// r.bits residual: strategies must never emit an infeasible path.
BufferState serve(const Network& net, const BufferState& state,
                  const Request& r, const Path& path);

// New state with residual[e] := min(capacity(e), residual[e] + rate) per
// edge; edges absent from rates gain nothing. Negative rates are invalid.
BufferState refresh(const BufferState& state, const Network& net,
                    const CapacityMap& rates);

struct RefreshConfig {
  CapacityMap rates;
  std::int64_t period = 1;  // refresh fires after every period-th request

  bool operator==(const RefreshConfig&) const = default;
};

struct SimulationResult {
  std::vector<Path> decisions;  // per request; empty path = rejected
  std::int64_t served_count = 0;
  std::int64_t rejected_count = 0;
  BufferState final_state;

  bool operator==(const SimulationResult&) const = default;
};

// Processes the trace in order from the nominal state, serving whenever the
// strategy finds a path (requests are never declined by policy). With a
// refresh config, refresh applies after every period-th request.
// Throws ValidationError when the trace fails validate_trace, or
// std::invalid_argument for a bad refresh config.
SimulationResult simulate(const Network& net, const Trace& trace,
                          Strategy strategy,
                          const std::optional<RefreshConfig>& refresh_config =
                              std::nullopt);

}  // namespace qkdroute
