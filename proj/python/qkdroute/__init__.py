"""Exact route planning and online routing simulation for key-distribution
networks.

Thin re-export of the compiled core. Exact values cross the boundary as
"num/den" strings; convert with fractions.Fraction when arithmetic is
needed.
"""

from ._qkdroute import (
    BudgetExceededError,
    Network,
    PlanProblem,
    Trace,
    ValidationFailure,
    brute_force_plan,
    build_network,
    build_problem,
    competitive_ratio,
    enumerate_paths,
    gen_sap_worst,
    gen_wsp_worst,
    make_trace,
    objective_value,
    optimal_served,
    predicted_sap_ratio,
    predicted_wsp_ratio,
    sap_route,
    simulate,
    solve_plan,
    validate_network,
    wsp_route,
)

__all__ = [
    "BudgetExceededError",
    "Network",
    "PlanProblem",
    "Trace",
    "ValidationFailure",
    "brute_force_plan",
    "build_network",
    "build_problem",
    "competitive_ratio",
    "enumerate_paths",
    "gen_sap_worst",
    "gen_wsp_worst",
    "make_trace",
    "objective_value",
    "optimal_served",
    "predicted_sap_ratio",
    "predicted_wsp_ratio",
    "sap_route",
    "simulate",
    "solve_plan",
    "validate_network",
    "wsp_route",
]
