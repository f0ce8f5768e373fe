#pragma once

#include "qkdroute/online.hpp"
#include "qkdroute/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qkdroute {

enum class Construction { SapWorst, WspWorst };

std::string to_string(Construction construction);

// Accepts the canonical names SAP_WORST, WSP_WORST.
Construction construction_from_string(const std::string& text);

struct AdversarialInstance {
  Network net;
  Trace trace;
  Rational predicted_ratio;
  Construction construction = Construction::SapWorst;
  std::int64_t edge_count = 0;  // declared parameter |E|
  std::int64_t beta = 0;
  std::int64_t mu = 0;
};

// Worst case for the fewest-hops strategy: a top chain of floor(E/2) edges
// and a bottom chain of floor(E/2)+1 edges from s to d, every capacity beta.
// Trace: beta/mu requests (s,d,mu), then per top-chain edge (u,v) in order,
// beta requests (u,v,1). Predicted ratio 1/(1+mu*floor(E/2)).
// Requires odd edge_count >= 3, mu >= 1, beta >= mu, beta divisible by mu;
// throws ValidationError otherwise.
AdversarialInstance gen_sap_worst(std::int64_t edge_count, std::int64_t beta,
                                  std::int64_t mu);

// Worst case for the widest-path strategy: a direct edge s->d of capacity
// beta next to a wide chain of capacity 2*beta, plus unit requests that
// need the wide chain after the greedy head has drained it. Predicted ratio
// 1/2 + 1/(2+4*mu*(E-1)). For edge_count >= 3 the wide chain has E-1 edges
// and every chain edge (u,v) receives 2*beta requests (u,v,1). edge_count 2
// calls for a parallel s->d pair, which this network model forbids, so the
// wide route is subdivided through one relay (2 edges of capacity 2*beta,
// realizing 3 physical edges) and only its first edge receives the
// 2*beta unit requests; the served/optimum arithmetic of the declared
// two-edge instance is preserved exactly. Requires edge_count >= 2, mu >= 1,
// beta >= mu, beta divisible by mu; throws ValidationError otherwise.
AdversarialInstance gen_wsp_worst(std::int64_t edge_count, std::int64_t beta,
                                  std::int64_t mu);

// Closed forms. Validate edge_count (odd >= 3 / >= 2) and mu >= 1.
Rational predicted_sap_ratio(std::int64_t edge_count, std::int64_t mu);
Rational predicted_wsp_ratio(std::int64_t edge_count, std::int64_t mu);

// The full-service routing the offline benchmark uses in the worst-case
// arguments: head requests take the route the greedy strategy should have
// left alone, unit requests take their own edge. Parallel to trace.requests.
std::vector<Path> constructive_assignment(const AdversarialInstance& instance);

Strategy matching_strategy(Construction construction);

}  // namespace qkdroute
