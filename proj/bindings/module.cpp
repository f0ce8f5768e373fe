// Python surface over the planning and simulation core. Composite values
// cross the boundary as plain python structures (tuples, dicts, fraction
// strings); exact rationals are rendered as "num/den" so nothing is rounded.
#include "qkdroute/json_io.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace py = pybind11;

namespace {

using namespace qkdroute;
using io::json;

using PyEdge = std::pair<std::string, std::string>;
using PyPath = std::vector<PyEdge>;

PyPath to_py(const Path& path) {
  PyPath out;
  for (const auto& edge : path.edges) {
    out.emplace_back(edge.src.name, edge.dst.name);
  }
  return out;
}

Path from_py(const PyPath& edges) {
  Path path;
  for (const auto& [src, dst] : edges) {
    path.edges.push_back(Edge{NodeId{src}, NodeId{dst}});
  }
  return path;
}

std::optional<PyPath> decision_to_py(const Path& path) {
  if (path.empty()) {
    return std::nullopt;
  }
  return to_py(path);
}

RawNetwork raw_network(
    const std::vector<std::string>& nodes,
    const std::vector<std::tuple<std::string, std::string, std::int64_t>>&
        edges) {
  RawNetwork raw;
  raw.nodes = nodes;
  for (const auto& [src, dst, capacity] : edges) {
    raw.edges.push_back(RawEdge{src, dst, capacity});
  }
  return raw;
}

Trace make_trace(
    std::int64_t mu,
    const std::vector<std::tuple<std::string, std::string, std::int64_t>>&
        requests) {
  Trace trace;
  trace.mu = mu;
  for (const auto& [src, dst, bits] : requests) {
    trace.requests.push_back(Request{NodeId{src}, NodeId{dst}, bits});
  }
  return trace;
}

BufferState state_from_entries(
    const std::vector<std::tuple<std::string, std::string, std::int64_t>>&
        entries) {
  BufferState state;
  for (const auto& [src, dst, residual] : entries) {
    state.residual[Edge{NodeId{src}, NodeId{dst}}] = residual;
  }
  return state;
}

py::dict solution_to_dict(const PlanProblem& problem,
                          const PlanSolution& solution) {
  py::dict out;
  py::list grants, chosen, paths;
  for (std::size_t i = 0; i < problem.contracts.size(); ++i) {
    grants.append(solution.grant[i]);
    const auto index = solution.chosen_path(i).value();
    chosen.append(index);
    paths.append(to_py(problem.path_sets[i].paths[index]));
  }
  out["grants"] = std::move(grants);
  out["chosen_path_index"] = std::move(chosen);
  out["paths"] = std::move(paths);
  out["objective_value"] = fraction_string(solution.objective_value);
  out["objective_value_decimal"] = fraction_decimal(solution.objective_value);
  out["report_json"] = io::solution_to_json(problem, solution).dump(2) + "\n";
  return out;
}

py::dict simulation_to_dict(const SimulationResult& result) {
  py::dict out;
  out["served"] = result.served_count;
  out["rejected"] = result.rejected_count;
  py::list decisions;
  for (const auto& path : result.decisions) {
    decisions.append(decision_to_py(path));
  }
  out["decisions"] = std::move(decisions);
  py::dict residual;
  for (const auto& [edge, value] : result.final_state.residual) {
    residual[py::make_tuple(edge.src.name, edge.dst.name)] = value;
  }
  out["final_residual"] = std::move(residual);
  return out;
}

py::dict instance_to_dict(const AdversarialInstance& instance) {
  py::dict out;
  out["network"] = instance.net;
  out["trace"] = instance.trace;
  out["predicted_ratio"] = fraction_string(instance.predicted_ratio);
  out["construction"] = to_string(instance.construction);
  out["manifest_json"] = io::manifest_to_json(instance).dump(2) + "\n";
  return out;
}

}  // namespace

PYBIND11_MODULE(_qkdroute, m) {
  m.doc() =
      "Exact route planning and online routing simulation for "
      "key-distribution networks";

  py::register_exception<ValidationError>(m, "ValidationFailure",
                                          PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceededError",
                                         PyExc_RuntimeError);

  py::class_<Network>(m, "Network")
      .def_static(
          "from_json",
          [](const std::string& text) {
            return io::network_from_json(json::parse(text));
          },
          py::arg("text"))
      .def("to_json",
           [](const Network& net) {
             return io::network_to_json(net).dump(2) + "\n";
           })
      .def_property_readonly("nodes",
                             [](const Network& net) {
                               std::vector<std::string> names;
                               for (const auto& node : net.nodes()) {
                                 names.push_back(node.name);
                               }
                               return names;
                             })
      .def_property_readonly("edges",
                             [](const Network& net) {
                               std::vector<PyEdge> out;
                               for (const auto& edge : net.edges()) {
                                 out.emplace_back(edge.src.name,
                                                  edge.dst.name);
                               }
                               return out;
                             })
      .def(
          "capacity",
          [](const Network& net, const std::string& src,
             const std::string& dst) {
            return net.capacity(Edge{NodeId{src}, NodeId{dst}});
          },
          py::arg("src"), py::arg("dst"))
      .def(py::self == py::self);

  py::class_<Trace>(m, "Trace")
      .def_static(
          "from_json",
          [](const std::string& text) {
            return io::trace_from_json(json::parse(text));
          },
          py::arg("text"))
      .def("to_json",
           [](const Trace& trace) {
             return io::trace_to_json(trace).dump(2) + "\n";
           })
      .def_property_readonly("mu", [](const Trace& t) { return t.mu; })
      .def_property_readonly("requests",
                             [](const Trace& t) {
                               std::vector<std::tuple<std::string, std::string,
                                                      std::int64_t>>
                                   out;
                               for (const auto& r : t.requests) {
                                 out.emplace_back(r.source.name, r.dest.name,
                                                  r.bits);
                               }
                               return out;
                             })
      .def("__len__", [](const Trace& t) { return t.requests.size(); })
      .def(py::self == py::self);

  py::class_<PlanProblem>(m, "PlanProblem")
      .def_property_readonly(
          "objective",
          [](const PlanProblem& p) { return to_string(p.objective); })
      .def_property_readonly("contracts",
                             [](const PlanProblem& p) {
                               std::vector<std::tuple<std::string, std::string,
                                                      std::int64_t,
                                                      std::int64_t>>
                                   out;
                               for (const auto& c : p.contracts) {
                                 out.emplace_back(c.source.name, c.dest.name,
                                                  c.bandwidth, c.priority);
                               }
                               return out;
                             })
      .def_property_readonly("path_counts", [](const PlanProblem& p) {
        std::vector<std::size_t> out;
        for (const auto& set : p.path_sets) {
          out.push_back(set.paths.size());
        }
        return out;
      });

  m.def("validate_network",
        [](const std::vector<std::string>& nodes,
           const std::vector<std::tuple<std::string, std::string,
                                        std::int64_t>>& edges) {
          return validate_network(raw_network(nodes, edges));
        },
        py::arg("nodes"), py::arg("edges"),
        "All violations in the raw topology; empty means it builds");

  m.def("build_network",
        [](const std::vector<std::string>& nodes,
           const std::vector<std::tuple<std::string, std::string,
                                        std::int64_t>>& edges) {
          return Network::from_raw(raw_network(nodes, edges));
        },
        py::arg("nodes"), py::arg("edges"));

  m.def("make_trace", &make_trace, py::arg("mu"), py::arg("requests"),
        "Trace from (src, dst, bits) tuples");

  m.def("enumerate_paths",
        [](const Network& net, const std::string& src, const std::string& dst,
           int max_hops) {
          std::vector<PyPath> out;
          for (const auto& path :
               enumerate_paths(net, NodeId{src}, NodeId{dst}, max_hops)
                   .paths) {
            out.push_back(to_py(path));
          }
          return out;
        },
        py::arg("net"), py::arg("src"), py::arg("dst"), py::arg("max_hops"),
        "All simple valid paths within the hop bound, canonical order");

  m.def("build_problem",
        [](const Network& net,
           const std::vector<std::tuple<std::string, std::string, std::int64_t,
                                        std::int64_t>>& contracts,
           int max_hops, const std::string& objective) {
          std::vector<Contract> parsed;
          for (const auto& [src, dst, bandwidth, priority] : contracts) {
            parsed.push_back(Contract{NodeId{src}, NodeId{dst}, bandwidth,
                                      priority});
          }
          return build_problem(net, std::move(parsed), max_hops,
                               objective_from_string(objective));
        },
        py::arg("net"), py::arg("contracts"), py::arg("max_hops") = 3,
        py::arg("objective") = "PESCF");

  m.def("solve_plan",
        [](const PlanProblem& problem, std::int64_t max_nodes) {
          return solution_to_dict(problem,
                                  solve(problem, SolveBudget{max_nodes}));
        },
        py::arg("problem"), py::arg("max_nodes") = 10'000'000);

  m.def("brute_force_plan",
        [](const PlanProblem& problem, std::int64_t bound) {
          return solution_to_dict(problem, brute_force_solve(problem, bound));
        },
        py::arg("problem"), py::arg("bound") = 10'000'000);

  m.def("objective_value",
        [](const PlanProblem& problem,
           const std::vector<std::int64_t>& grants) {
          return fraction_string(objective_value(problem, grants));
        },
        py::arg("problem"), py::arg("grants"),
        "Exact objective of a grant vector, as \"num/den\"");

  m.def("sap_route",
        [](const Network& net,
           const std::vector<std::tuple<std::string, std::string,
                                        std::int64_t>>& residual,
           const std::string& src, const std::string& dst,
           std::int64_t bits) {
          return to_py(sap_route(net, state_from_entries(residual),
                                 Request{NodeId{src}, NodeId{dst}, bits}));
        },
        py::arg("net"), py::arg("residual"), py::arg("src"), py::arg("dst"),
        py::arg("bits"),
        "Fewest-hops available path; empty list when rejected");

  m.def("wsp_route",
        [](const Network& net,
           const std::vector<std::tuple<std::string, std::string,
                                        std::int64_t>>& residual,
           const std::string& src, const std::string& dst,
           std::int64_t bits) {
          return to_py(wsp_route(net, state_from_entries(residual),
                                 Request{NodeId{src}, NodeId{dst}, bits}));
        },
        py::arg("net"), py::arg("residual"), py::arg("src"), py::arg("dst"),
        py::arg("bits"),
        "Widest, then shortest, available path; empty list when rejected");

  m.def("simulate",
        [](const Network& net, const Trace& trace,
           const std::string& strategy) {
          return simulation_to_dict(
              simulate(net, trace, strategy_from_string(strategy)));
        },
        py::arg("net"), py::arg("trace"), py::arg("strategy"));

  m.def("optimal_served",
        [](const Network& net, const Trace& trace, std::int64_t max_requests,
           std::int64_t max_states) {
          const OptResult result = optimal_served(
              net, trace, SearchBudget{max_requests, max_states});
          std::vector<std::optional<PyPath>> assignment;
          for (const auto& path : result.assignment) {
            assignment.push_back(decision_to_py(path));
          }
          return py::make_tuple(result.count, assignment);
        },
        py::arg("net"), py::arg("trace"), py::arg("max_requests") = 20,
        py::arg("max_states") = 10'000'000,
        "Offline optimum: (count, per-request path or None)");

  m.def("competitive_ratio",
        [](const Network& net, const Trace& trace,
           const std::string& strategy) {
          const RatioReport report =
              competitive_ratio(net, trace, strategy_from_string(strategy));
          py::dict out;
          out["algorithm_served"] = report.algorithm_served;
          out["opt_served"] = report.opt_served;
          out["ratio"] = fraction_string(report.ratio);
          out["ratio_decimal"] = fraction_decimal(report.ratio);
          return out;
        },
        py::arg("net"), py::arg("trace"), py::arg("strategy"));

  m.def("gen_sap_worst",
        [](std::int64_t edge_count, std::int64_t beta, std::int64_t mu) {
          return instance_to_dict(gen_sap_worst(edge_count, beta, mu));
        },
        py::arg("edge_count"), py::arg("beta"), py::arg("mu"));

  m.def("gen_wsp_worst",
        [](std::int64_t edge_count, std::int64_t beta, std::int64_t mu) {
          return instance_to_dict(gen_wsp_worst(edge_count, beta, mu));
        },
        py::arg("edge_count"), py::arg("beta"), py::arg("mu"));

  m.def("predicted_sap_ratio",
        [](std::int64_t edge_count, std::int64_t mu) {
          return fraction_string(predicted_sap_ratio(edge_count, mu));
        },
        py::arg("edge_count"), py::arg("mu"));

  m.def("predicted_wsp_ratio",
        [](std::int64_t edge_count, std::int64_t mu) {
          return fraction_string(predicted_wsp_ratio(edge_count, mu));
        },
        py::arg("edge_count"), py::arg("mu"));
}
