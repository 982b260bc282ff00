import math
from typing import Optional
from typing import Tuple

import numpy as np
from pydantic import Field
from pydantic import PrivateAttr
from pydantic import root_validator
from pydantic import validator

from _spsfeedback_sdk.core.models import FrozenModel
from _spsfeedback_sdk.core.models import readonly
from _spsfeedback_sdk.enums import Branch
from _spsfeedback_sdk.enums import Method
from _spsfeedback_sdk.enums import Mode
from _spsfeedback_sdk.generator.models import ModelParams

CONSTRAINT_SLACK = 1e-6
EDGE_TS = "T_s"
EDGE_NU1 = "nu1"
EDGE_SEPARATOR = "+"


def default_ts_grid() -> np.ndarray:
    return np.arange(0.0, 100.25, 0.5)


def default_nu1_grid() -> np.ndarray:
    return np.geomspace(0.1, 10.0, 24)


def default_omega_grid() -> np.ndarray:
    return np.round(np.linspace(0.01, 0.1, 10), 10)


def _sorted_grid(value, name: str) -> np.ndarray:
    value = np.asarray(value, dtype=float).reshape(-1)
    if value.size == 0:
        raise ValueError(f"{name} must not be empty.")
    if not np.all(np.isfinite(value)):
        raise ValueError(f"{name} must be finite.")
    if np.any(np.diff(value) <= 0):
        raise ValueError(f"{name} must be strictly increasing.")
    return readonly(value)


class OptimizationConfig(FrozenModel):
    """
    Search space and constraint of the stopping-time optimizations.

    **Fields**:

    * **epsilon**: `float` - Cap ε on the multi-photon probability p(2+), in (0, 1).
    * **ts_grid**: `np.ndarray` - Stopping times T_s scanned before refinement. Defaults to 0, 0.5, …, 100.
    * **nu1_grid**: `np.ndarray` - Switch-off rates ν₁ for the threshold scheme. Defaults to 24 log-spaced points
        over [0.1, 10].
    * **gamma_set**: `Tuple[float, ...]` - Measurement rates γ. Defaults to (0.1, 1, 10).
    * **omega_grid**: `np.ndarray` - Pump rates Ω scanned by coupling sweeps. Defaults to 0.01, 0.02, …, 0.1.
    * **time_tolerance**: `float` - Refinement tolerance on times. Defaults to 1e-4.
    * **include_deterministic**: `bool` - Add the open-loop point (γ = ν = 0) to threshold searches.
    """

    epsilon: float = Field(..., gt=0, lt=1)
    ts_grid: np.ndarray = Field(default_factory=default_ts_grid)
    nu1_grid: np.ndarray = Field(default_factory=default_nu1_grid)
    gamma_set: Tuple[float, ...] = (0.1, 1.0, 10.0)
    omega_grid: np.ndarray = Field(default_factory=default_omega_grid)
    time_tolerance: float = Field(1e-4, gt=0)
    include_deterministic: bool = False

    @validator("ts_grid", pre=True, always=True)
    def _validate_ts_grid(cls, value):  # noqa
        value = _sorted_grid(value, "ts_grid")
        if value[0] < 0:
            raise ValueError("stopping times must be nonnegative.")
        return value

    @validator("nu1_grid", "omega_grid", pre=True, always=True)
    def _validate_rate_grid(cls, value, field):  # noqa
        value = _sorted_grid(value, field.name)
        if value[0] <= 0:
            raise ValueError(f"{field.name} must hold positive rates.")
        return value

    @validator("gamma_set")
    def _validate_gamma_set(cls, value):  # noqa
        value = tuple(float(v) for v in value)
        if not value:
            raise ValueError("gamma_set must not be empty.")
        if any(v <= 0 for v in value) or list(value) != sorted(set(value)):
            raise ValueError("gamma_set must hold distinct positive rates in increasing order.")
        return value

    def with_epsilon(self, epsilon: float) -> "OptimizationConfig":
        return OptimizationConfig(**{**self.__dict__, "epsilon": epsilon})


class OptResult(FrozenModel):
    """
    Optimum of p(1) subject to p(2+) ≤ ε.

    **Fields**:

    * **mode**: `Mode` - `deterministic` or `threshold`.
    * **best_p1**: `float` - Single-photon probability at the optimum.
    * **p2_at_opt**: `float` - Multi-photon probability at the optimum.
    * **p0_at_opt**: `float` - Vacuum probability at the optimum.
    * **t_switch**: `float` - Optimal stopping time T_s.
    * **t_epsilon**: `float` - Time at which p(2+) reaches ε (`inf` when it never does).
    * **t_max**: `float` - Unconstrained argmax of p(1) over T_s.
    * **p1_at_t_max**, **p2_at_t_max**: `float` - Probabilities at `t_max`.
    * **branch**: `Branch` - Which case decided the optimum.
    * **epsilon**, **omega**, **g**: `float` - Inputs of the search.
    * **gamma_meas**, **nu1**, **nu0**, **tau**: `Optional[float]` - Threshold-scheme coordinates of the optimum.
    * **grid_edges**: `str` - Searched coordinates whose optimum sits on the last T_s or an outer ν₁ grid point,
        joined with `+` (`T_s`, `nu1`, `T_s+nu1`); empty when the optimum is interior.
    """

    mode: Mode
    best_p1: float
    p2_at_opt: float
    p0_at_opt: float = 0.0
    t_switch: float
    t_epsilon: float = math.inf
    t_max: float = 0.0
    p1_at_t_max: float = 0.0
    p2_at_t_max: float = 0.0
    branch: Branch
    epsilon: float
    omega: float
    g: float
    gamma_meas: Optional[float] = None
    nu1: Optional[float] = None
    nu0: Optional[float] = None
    tau: Optional[float] = None
    grid_edges: str = ""

    @property
    def edges(self) -> Tuple[str, ...]:
        return tuple(self.grid_edges.split(EDGE_SEPARATOR)) if self.grid_edges else ()

    def with_edge(self, name: str) -> "OptResult":
        if name in self.edges:
            return self
        return self.copy(update={"grid_edges": EDGE_SEPARATOR.join(self.edges + (name,))})

    @root_validator(skip_on_failure=True)
    def _within_cap(cls, values):  # noqa
        if Branch(values["branch"]) != Branch.INFEASIBLE and values["p2_at_opt"] > values["epsilon"] + CONSTRAINT_SLACK:
            raise ValueError(
                f"optimum violates the multi-photon cap: p2={values['p2_at_opt']:.6g} > ε={values['epsilon']:.6g}."
            )
        return values


class Curves(FrozenModel):
    """
    Asymptotic emission probabilities as functions of the stopping time.

    Grid values are stored; `evaluate` reaches off-grid times through the evaluator that produced them (or linear
    interpolation when none is attached, e.g. after unpickling).
    """

    params: ModelParams
    mode: Mode
    method: Method = Method.SPECTRAL
    ts: np.ndarray
    p0: np.ndarray
    p1: np.ndarray
    p2plus: np.ndarray

    _evaluator = PrivateAttr(default=None)

    @validator("ts", "p0", "p1", "p2plus", pre=True)
    def _as_float(cls, value):  # noqa
        return readonly(np.asarray(value, dtype=float).reshape(-1))

    @root_validator(skip_on_failure=True)
    def _same_length(cls, values):  # noqa
        n = values["ts"].shape[0]
        for name in ("p0", "p1", "p2plus"):
            if values[name].shape[0] != n:
                raise ValueError(f"{name} has {values[name].shape[0]} points, expected {n}.")
        return values

    def attach(self, evaluator) -> "Curves":
        self._evaluator = evaluator
        return self

    def evaluate_many(self, ts) -> np.ndarray:
        """Rows p0, p1, p2plus at each of `ts`."""
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        if self._evaluator is not None:
            values = self._evaluator(ts)
            return np.vstack([values[0], values[1], values[2:].sum(axis=0)])
        return np.vstack([np.interp(ts, self.ts, column) for column in (self.p0, self.p1, self.p2plus)])

    def evaluate(self, t: float) -> np.ndarray:
        return self.evaluate_many([t])[:, 0]


class GridTask(FrozenModel):
    """One independent work item of a parameter grid: an open-loop point, or a threshold point at (γ, ν₁)."""

    group: int = 0
    mode: Mode
    params: ModelParams
    gamma_meas: float = 0.0
    nu1: float = 0.0


class SweepPoint(FrozenModel):
    """A row of a figure-style sweep: one curve evaluated at one abscissa."""

    curve: str
    variable: str
    value: float
    result: OptResult
