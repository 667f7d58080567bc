"""Domain types, the built-in reference instance and instance file I/O."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence, Union

import jsonschema
import numpy as np

DEPOT = 0


class InstanceError(ValueError):
    """Raised when an instance is malformed or breaks an invariant."""


@dataclass(frozen=True, eq=False)
class Instance:
    """A depot-plus-customers network with arc success probabilities.

    Node 0 is the depot. ``coords`` has shape (N+1, 2), ``demand`` (N+1,)
    and ``success`` (N+1, N+1). Arc costs are Euclidean distances; when
    ``cost_precision`` is set each arc cost is rounded to that many
    decimals before being summed along a route.
    """

    coords: np.ndarray
    demand: np.ndarray
    fleet_size: int
    capacity: float
    success: np.ndarray
    cost_precision: int | None = None
    name: str = ""

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float)
        demand = np.array(self.demand, dtype=float)
        success = np.array(self.success, dtype=float)
        n1 = len(demand)
        if coords.shape != (n1, 2):
            raise InstanceError(f"coords must have shape ({n1}, 2), got {coords.shape}")
        if success.shape != (n1, n1):
            raise InstanceError(f"success must have shape ({n1}, {n1}), got {success.shape}")
        if n1 < 2:
            raise InstanceError("instance needs a depot and at least one customer")
        for label, arr in (("coords", coords), ("demand", demand), ("success", success)):
            if not np.all(np.isfinite(arr)):
                raise InstanceError(f"{label} contains NaN or Inf")
        if demand[DEPOT] != 0:
            raise InstanceError(f"depot demand must be 0, got {demand[DEPOT]!r}")
        neg = np.flatnonzero(demand < 0)
        if neg.size:
            raise InstanceError(f"negative demand at node {int(neg[0])}: {demand[neg[0]]!r}")
        bad = np.argwhere((success < 0) | (success > 1))
        if bad.size:
            i, j = map(int, bad[0])
            raise InstanceError(f"success[{i}][{j}] = {success[i, j]!r} outside [0, 1]")
        asym = np.argwhere(success != success.T)
        if asym.size:
            i, j = map(int, asym[0])
            raise InstanceError(
                f"success matrix not symmetric: success[{i}][{j}] = {success[i, j]!r}"
                f" but success[{j}][{i}] = {success[j, i]!r}"
            )
        if not np.all(np.diag(success) == 1):
            raise InstanceError("success matrix diagonal must be 1")
        if int(self.fleet_size) != self.fleet_size or self.fleet_size < 1:
            raise InstanceError(f"fleet_size must be a positive integer, got {self.fleet_size!r}")
        if not (math.isfinite(self.capacity) and self.capacity > 0):
            raise InstanceError(f"capacity must be positive, got {self.capacity!r}")
        if self.cost_precision is not None and self.cost_precision < 0:
            raise InstanceError("cost_precision must be a nonnegative integer or None")
        for arr in (coords, demand, success):
            arr.flags.writeable = False
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "demand", demand)
        object.__setattr__(self, "success", success)
        object.__setattr__(self, "fleet_size", int(self.fleet_size))
        object.__setattr__(self, "capacity", float(self.capacity))

    @property
    def n_customers(self) -> int:
        return len(self.demand) - 1

    @property
    def customers(self) -> range:
        return range(1, len(self.demand))

    @cached_property
    def cost(self) -> np.ndarray:
        """Arc cost matrix (Euclidean, optionally rounded per arc)."""
        diff = self.coords[:, None, :] - self.coords[None, :, :]
        c = np.sqrt((diff**2).sum(axis=-1))
        if self.cost_precision is not None:
            c = np.round(c, self.cost_precision)
        c.flags.writeable = False
        return c

    @cached_property
    def cost_rows(self) -> list[list[float]]:
        # plain lists are much faster than ndarray indexing in scalar loops
        return self.cost.tolist()

    @cached_property
    def success_rows(self) -> list[list[float]]:
        return self.success.tolist()

    @cached_property
    def demand_list(self) -> list[float]:
        return self.demand.tolist()

    @cached_property
    def diameter(self) -> float:
        """Largest arc cost in the network."""
        return float(self.cost.max())

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.fleet_size == other.fleet_size
            and self.capacity == other.capacity
            and self.cost_precision == other.cost_precision
            and self.name == other.name
            and np.array_equal(self.coords, other.coords)
            and np.array_equal(self.demand, other.demand)
            and np.array_equal(self.success, other.success)
        )

    __hash__ = None


Route = tuple  # ordered customer ids; the depot is implicit at both ends


@dataclass(frozen=True)
class Solution:
    """One route per vehicle (empty routes allowed)."""

    routes: tuple[tuple[int, ...], ...]

    def __init__(self, routes: Sequence[Sequence[int]]):
        object.__setattr__(self, "routes", tuple(tuple(int(c) for c in r) for r in routes))

    def customers(self) -> list[int]:
        return [c for r in self.routes for c in r]

    def nonempty_routes(self) -> list[tuple[int, ...]]:
        return [r for r in self.routes if r]

    def __str__(self):
        return " | ".join(
            "0->" + "->".join(map(str, r)) + "->0" if r else "(unused)" for r in self.routes
        )


@dataclass(frozen=True)
class MinCost:
    """Minimize total cost subject to every customer's success rate >= alpha."""

    alpha: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha!r}")


@dataclass(frozen=True)
class MaxSuccess:
    """Maximize total success subject to total cost <= beta."""

    beta: float

    def __post_init__(self):
        if not (self.beta >= 0 and math.isfinite(self.beta)):
            raise ValueError(f"beta must be a finite nonnegative number, got {self.beta!r}")


ObjectiveSpec = Union[MinCost, MaxSuccess]


@dataclass(frozen=True)
class Evaluation:
    total_cost: float
    node_success: Mapping[int, float]
    total_success: float
    capacity_violation: float
    constraint_violation: float
    route_loads: tuple[float, ...] = field(default=())
    route_costs: tuple[float, ...] = field(default=())

    @property
    def feasible(self) -> bool:
        return self.capacity_violation == 0 and self.constraint_violation == 0

    @property
    def min_node_success(self) -> float:
        return min(self.node_success.values(), default=1.0)


def distance(instance: Instance, i: int, j: int) -> float:
    """Euclidean distance between nodes ``i`` and ``j`` (never rounded)."""
    n1 = len(instance.demand)
    for k in (i, j):
        if not 0 <= k < n1:
            raise IndexError(f"node {k} out of range 0..{n1 - 1}")
    (xi, yi), (xj, yj) = instance.coords[i], instance.coords[j]
    return math.hypot(xi - xj, yi - yj)


# 8 customers, 2 vehicles of capacity 180.
_REF_NODES = [
    # x, y, demand
    (7, 47, 0),
    (28, 45, 47),
    (21, 1, 35),
    (38, 10, 47),
    (48, 0, 33),
    (44, 31, 28),
    (17, 35, 43),
    (12, 47, 39),
    (3, 12, 36),
]

_REF_SUCCESS = [
    [1, 0.961, 0.949, 0.941, 0.952, 0.948, 0.982, 0.949, 0.972],
    [0.961, 1, 0.937, 0.932, 0.963, 0.963, 0.985, 0.987, 0.976],
    [0.949, 0.937, 1, 0.982, 0.956, 0.952, 0.937, 0.973, 0.962],
    [0.941, 0.932, 0.982, 1, 0.966, 0.987, 0.955, 0.962, 0.970],
    [0.952, 0.963, 0.956, 0.966, 1, 0.933, 0.981, 0.975, 0.986],
    [0.948, 0.963, 0.952, 0.987, 0.933, 1, 0.980, 0.977, 0.978],
    [0.982, 0.985, 0.937, 0.955, 0.981, 0.980, 1, 0.958, 0.984],
    [0.949, 0.987, 0.973, 0.962, 0.975, 0.977, 0.958, 1, 0.920],
    [0.972, 0.976, 0.962, 0.970, 0.986, 0.978, 0.984, 0.920, 1],
]


def reference_instance() -> Instance:
    """The 8-customer, 2-vehicle example network.

    Arc costs are rounded to 2 decimals; the published optima (211.25,
    248.55, 212.89, ...) are sums of arc costs rounded that way.
    """
    nodes = np.array(_REF_NODES, dtype=float)
    return Instance(
        coords=nodes[:, :2],
        demand=nodes[:, 2],
        fleet_size=2,
        capacity=180,
        success=_REF_SUCCESS,
        cost_precision=2,
        name="reference",
    )


# --- file I/O -------------------------------------------------------------


def _schema() -> dict:
    text = resources.files(__package__).joinpath("instance.schema.json").read_text()
    return json.loads(text)


def _reject_constant(name):
    raise InstanceError(f"non-finite number {name} is not allowed")


def instance_to_dict(instance: Instance) -> dict:
    nodes = [
        {"id": i, "x": float(x), "y": float(y), "demand": float(d)}
        for i, ((x, y), d) in enumerate(zip(instance.coords.tolist(), instance.demand.tolist()))
    ]
    out = {
        "name": instance.name,
        "nodes": nodes,
        "fleet": {"count": instance.fleet_size, "capacity": instance.capacity},
        "success": instance.success.tolist(),
    }
    if instance.cost_precision is not None:
        out["cost_precision"] = instance.cost_precision
    return out


def instance_from_dict(data: dict) -> Instance:
    try:
        jsonschema.validate(data, _schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InstanceError(f"invalid instance at {where}: {exc.message}") from None

    nodes = data["nodes"]
    for pos, node in enumerate(nodes):
        if node["id"] != pos:
            raise InstanceError(f"nodes/{pos}: expected id {pos}, got {node['id']}")
    n1 = len(nodes)
    rows = data["success"]
    if len(rows) != n1:
        raise InstanceError(f"success: expected {n1} rows, got {len(rows)}")
    if all(len(r) == n1 for r in rows):
        success = np.array(rows, dtype=float)
    elif all(len(r) == n1 - i for i, r in enumerate(rows)):
        success = np.zeros((n1, n1))
        for i, r in enumerate(rows):
            success[i, i:] = r
            success[i:, i] = r
    else:
        raise InstanceError(
            f"success: rows must all have {n1} entries (full matrix) or "
            f"{n1}, {n1 - 1}, ..., 1 entries (upper triangle)"
        )
    return Instance(
        coords=[(nd["x"], nd["y"]) for nd in nodes],
        demand=[nd["demand"] for nd in nodes],
        fleet_size=data["fleet"]["count"],
        capacity=data["fleet"]["capacity"],
        success=success,
        cost_precision=data.get("cost_precision"),
        name=data.get("name", ""),
    )


def load_instance(path: str | Path) -> Instance:
    """Read an instance file; raises InstanceError on malformed content."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return instance_from_dict(data)
    except InstanceError as exc:
        raise InstanceError(f"{path}: {exc}") from None


def save_instance(instance: Instance, path: str | Path) -> None:
    # json writes floats with repr(), which round-trips exactly
    text = json.dumps(instance_to_dict(instance), indent=1, allow_nan=False)
    Path(path).write_text(text + "\n", encoding="utf-8")
