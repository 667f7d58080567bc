"""Robust capacitated vehicle routing with attack-prone arcs."""

from .annealing import SaConfig, SaResult, solve_sa, solve_sa_multistart
from .evaluation import PenaltyConfig, evaluate, node_success, route_cost, scalar_objective
from .exact import ExactResult, decode, encode, solve_exact
from .generator import GenSpec, generate
from .model import (
    Evaluation,
    Instance,
    MaxSuccess,
    MinCost,
    Solution,
    distance,
    load_instance,
    reference_instance,
    save_instance,
)

__all__ = [
    "Evaluation", "ExactResult", "GenSpec", "Instance", "MaxSuccess", "MinCost",
    "PenaltyConfig", "SaConfig", "SaResult", "Solution", "decode", "distance", "encode",
    "evaluate", "generate", "load_instance", "node_success", "reference_instance",
    "route_cost", "save_instance", "scalar_objective", "solve_exact", "solve_sa",
    "solve_sa_multistart",
]
