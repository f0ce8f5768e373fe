#include "qkdroute/adversary.hpp"

#include <string>
#include <vector>

namespace qkdroute {

namespace {

void require_params(Construction construction, std::int64_t edge_count,
                    std::int64_t beta, std::int64_t mu) {
  std::vector<std::string> issues;
  if (construction == Construction::SapWorst) {
    if (edge_count < 3 || edge_count % 2 == 0) {
      issues.push_back("edge_count must be odd and at least 3, got " +
                       std::to_string(edge_count));
    }
  } else if (edge_count < 2) {
    issues.push_back("edge_count must be at least 2, got " +
                     std::to_string(edge_count));
  }
  if (mu < 1) {
    issues.push_back("mu must be positive, got " + std::to_string(mu));
  }
  if (beta < mu) {
    issues.push_back("beta must be at least mu, got beta=" +
                     std::to_string(beta) + " mu=" + std::to_string(mu));
  }
  if (mu >= 1 && beta % mu != 0) {
    issues.push_back("beta must be divisible by mu, got beta=" +
                     std::to_string(beta) + " mu=" + std::to_string(mu));
  }
  if (!issues.empty()) {
    throw ValidationError(std::move(issues));
  }
}

// Chain of `length` edges from s to d through prefix-numbered relays,
// e.g. prefix "b", length 3: s -> b1 -> b2 -> d.
std::vector<Edge> chain(const std::string& prefix, std::int64_t length) {
  std::vector<Edge> edges;
  NodeId at{"s"};
  for (std::int64_t i = 1; i < length; ++i) {
    NodeId next{prefix + std::to_string(i)};
    edges.push_back(Edge{at, next});
    at = next;
  }
  edges.push_back(Edge{at, NodeId{"d"}});
  return edges;
}

void add_edges(RawNetwork& raw, const std::vector<Edge>& edges,
               std::int64_t capacity) {
  for (const auto& edge : edges) {
    for (const auto& endpoint : {edge.src, edge.dst}) {
      bool known = false;
      for (const auto& name : raw.nodes) {
        known = known || name == endpoint.name;
      }
      if (!known) {
        raw.nodes.push_back(endpoint.name);
      }
    }
    raw.edges.push_back(RawEdge{edge.src.name, edge.dst.name, capacity});
  }
}

void push_requests(Trace& trace, const NodeId& source, const NodeId& dest,
                   std::int64_t bits, std::int64_t count) {
  for (std::int64_t i = 0; i < count; ++i) {
    trace.requests.push_back(Request{source, dest, bits});
  }
}

}  // namespace

std::string to_string(Construction construction) {
  switch (construction) {
    case Construction::SapWorst:
      return "SAP_WORST";
    case Construction::WspWorst:
      return "WSP_WORST";
  }
  throw std::logic_error("unreachable construction kind");
}

Construction construction_from_string(const std::string& text) {
  if (text == "SAP_WORST") return Construction::SapWorst;
  if (text == "WSP_WORST") return Construction::WspWorst;
  throw std::invalid_argument("unknown construction \"" + text +
                              "\" (expected SAP_WORST or WSP_WORST)");
}

Strategy matching_strategy(Construction construction) {
  return construction == Construction::SapWorst ? Strategy::Sap
                                                : Strategy::Wsp;
}

Rational predicted_sap_ratio(std::int64_t edge_count, std::int64_t mu) {
  require_params(Construction::SapWorst, edge_count, mu, mu);
  return Rational(1, 1 + mu * (edge_count / 2));
}

Rational predicted_wsp_ratio(std::int64_t edge_count, std::int64_t mu) {
  require_params(Construction::WspWorst, edge_count, mu, mu);
  return Rational(1, 2) + Rational(1, 2 + 4 * mu * (edge_count - 1));
}

AdversarialInstance gen_sap_worst(std::int64_t edge_count, std::int64_t beta,
                                  std::int64_t mu) {
  require_params(Construction::SapWorst, edge_count, beta, mu);
  const std::int64_t top_len = edge_count / 2;

  AdversarialInstance instance;
  instance.construction = Construction::SapWorst;
  instance.edge_count = edge_count;
  instance.beta = beta;
  instance.mu = mu;
  instance.predicted_ratio = predicted_sap_ratio(edge_count, mu);

  const auto top = chain("t", top_len);
  const auto bottom = chain("b", top_len + 1);
  RawNetwork raw;
  add_edges(raw, top, beta);
  add_edges(raw, bottom, beta);
  instance.net = Network::from_raw(raw);

  instance.trace.mu = mu;
  push_requests(instance.trace, NodeId{"s"}, NodeId{"d"}, mu, beta / mu);
  for (const auto& edge : top) {
    push_requests(instance.trace, edge.src, edge.dst, 1, beta);
  }
  return instance;
}

AdversarialInstance gen_wsp_worst(std::int64_t edge_count, std::int64_t beta,
                                  std::int64_t mu) {
  require_params(Construction::WspWorst, edge_count, beta, mu);

  AdversarialInstance instance;
  instance.construction = Construction::WspWorst;
  instance.edge_count = edge_count;
  instance.beta = beta;
  instance.mu = mu;
  instance.predicted_ratio = predicted_wsp_ratio(edge_count, mu);

  // Declared |E|=2 needs two s->d routes out of two edges; with parallel
  // edges excluded the wide route runs through one relay instead, and the
  // unit requests target only its first edge so the greedy strategy loses
  // exactly as much as in the declared instance.
  const std::int64_t wide_len = edge_count == 2 ? 2 : edge_count - 1;
  const auto wide = chain("b", wide_len);
  RawNetwork raw;
  add_edges(raw, {Edge{NodeId{"s"}, NodeId{"d"}}}, beta);
  add_edges(raw, wide, 2 * beta);
  instance.net = Network::from_raw(raw);

  instance.trace.mu = mu;
  push_requests(instance.trace, NodeId{"s"}, NodeId{"d"}, mu, beta / mu);
  if (edge_count == 2) {
    push_requests(instance.trace, wide.front().src, wide.front().dst, 1,
                  2 * beta);
  } else {
    for (const auto& edge : wide) {
      push_requests(instance.trace, edge.src, edge.dst, 1, 2 * beta);
    }
  }
  return instance;
}

std::vector<Path> constructive_assignment(
    const AdversarialInstance& instance) {
  const std::int64_t heads = instance.beta / instance.mu;
  std::vector<Path> assignment;

  // Head requests ride the route the greedy strategy avoids; unit requests
  // get the edge they name.
  Path head_route;
  if (instance.construction == Construction::SapWorst) {
    head_route = Path{chain("b", instance.edge_count / 2 + 1)};
  } else {
    head_route = Path{{Edge{NodeId{"s"}, NodeId{"d"}}}};
  }
  for (std::int64_t i = 0; i < heads; ++i) {
    assignment.push_back(head_route);
  }
  for (std::size_t i = static_cast<std::size_t>(heads);
       i < instance.trace.requests.size(); ++i) {
    const auto& r = instance.trace.requests[i];
    assignment.push_back(Path{{Edge{r.source, r.dest}}});
  }
  return assignment;
}

}  // namespace qkdroute
