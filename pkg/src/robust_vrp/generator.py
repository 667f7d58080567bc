"""Random instances for scalability experiments.

Coordinates (depot included) ~ U(0, 100), integer demand ~ U{20..50},
arc success ~ U(0.9, 0.99) drawn once per unordered pair, and vehicle
capacity ``ceil(1.02 * total_demand / fleet_size)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Instance


@dataclass(frozen=True)
class GenSpec:
    n_customers: int
    fleet_size: int
    seed: int = 0

    def __post_init__(self):
        if self.n_customers < 1:
            raise ValueError(f"n_customers must be >= 1, got {self.n_customers}")
        if self.fleet_size < 1:
            raise ValueError(f"fleet_size must be >= 1, got {self.fleet_size}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


def fleet_capacity(total_demand: float, fleet_size: int) -> int:
    return math.ceil(1.02 * total_demand / fleet_size)


def generate(spec: GenSpec) -> Instance:
    rng = np.random.default_rng(spec.seed)
    n1 = spec.n_customers + 1
    coords = rng.uniform(0.0, 100.0, size=(n1, 2))
    demand = np.zeros(n1)
    demand[1:] = rng.integers(20, 50, size=spec.n_customers, endpoint=True)
    iu = np.triu_indices(n1, k=1)
    success = np.eye(n1)
    success[iu] = rng.uniform(0.9, 0.99, size=len(iu[0]))
    success.T[iu] = success[iu]
    return Instance(
        coords=coords,
        demand=demand,
        fleet_size=spec.fleet_size,
        capacity=fleet_capacity(demand.sum(), spec.fleet_size),
        success=success,
        name=f"gen-n{spec.n_customers}-k{spec.fleet_size}-s{spec.seed}",
    )
