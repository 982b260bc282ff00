"""
Constrained maximization of the single-photon probability, p(1) → max subject to p(2+) ≤ ε, over the stopping
time and (for the threshold scheme) the switch-off rate ν₁ and measurement rate γ.
"""
import logging
from functools import partial
from typing import List
from typing import Optional
from typing import Sequence

from scipy.optimize import brentq

from _spsfeedback_sdk.enums import Branch
from _spsfeedback_sdk.enums import Mode
from _spsfeedback_sdk.exceptions import DomainError
from _spsfeedback_sdk.generator.models import ModelParams
from _spsfeedback_sdk.optimize.curves import find_t_epsilon
from _spsfeedback_sdk.optimize.curves import find_t_max
from _spsfeedback_sdk.optimize.curves import p_curves
from _spsfeedback_sdk.optimize.models import CONSTRAINT_SLACK
from _spsfeedback_sdk.optimize.models import Curves
from _spsfeedback_sdk.optimize.models import EDGE_NU1
from _spsfeedback_sdk.optimize.models import EDGE_TS
from _spsfeedback_sdk.optimize.models import GridTask
from _spsfeedback_sdk.optimize.models import OptimizationConfig
from _spsfeedback_sdk.optimize.models import OptResult
from _spsfeedback_sdk.optimize.parallel import ordered_map
from _spsfeedback_sdk.propagate.models import SolverOptions
from _spsfeedback_sdk.rates.models import MeasurementModel
from _spsfeedback_sdk.rates.threshold import rates_for

_logger = logging.getLogger("spsfeedback.optimize")

# calibration refines stopping times far below the reporting tolerance
CALIBRATION_TIME_TOLERANCE = 1e-8
CALIBRATION_P1_TOLERANCE = 1e-10
EPSILON_FLOOR = 1e-12


def result_from_curves(curves: Curves, epsilon: float, tolerance: float = 1e-4) -> OptResult:
    """
    Best admissible stopping time on one set of curves: t_opt = min(t_ε, t_m).

    The branch is `constraint_limited` when the cap is hit before p(1) peaks, `interior_max` otherwise.
    """
    t_epsilon = find_t_epsilon(curves, epsilon, tolerance)
    t_max = find_t_max(curves, tolerance)
    if t_epsilon < t_max:
        t_opt, branch = t_epsilon, Branch.CONSTRAINT_LIMITED
    else:
        t_opt, branch = t_max, Branch.INTERIOR_MAX
    p0, p1, p2 = curves.evaluate(t_opt)
    if p2 > epsilon + CONSTRAINT_SLACK:
        branch = Branch.INFEASIBLE
    at_edge = len(curves.ts) > 1 and t_opt >= curves.ts[-1] - tolerance
    _, p1_max, p2_max = curves.evaluate(t_max)
    params = curves.params
    threshold = Mode(curves.mode) == Mode.THRESHOLD
    return OptResult(
        mode=curves.mode,
        best_p1=p1,
        p2_at_opt=p2,
        p0_at_opt=p0,
        t_switch=t_opt,
        t_epsilon=t_epsilon,
        t_max=t_max,
        p1_at_t_max=p1_max,
        p2_at_t_max=p2_max,
        branch=branch,
        epsilon=epsilon,
        omega=params.omega,
        g=params.g,
        gamma_meas=params.gamma_meas if threshold else 0.0,
        nu1=params.nu1 if threshold else 0.0,
        nu0=params.nu0 if threshold else 0.0,
        tau=params.tau if threshold else None,
        grid_edges=EDGE_TS if at_edge else "",
    )


def warn_on_edge(result: OptResult):
    if result.grid_edges:
        _logger.warning(
            f"optimum p1={result.best_p1:.6f} at Ω={result.omega:g}, g={result.g:g} sits on the {result.grid_edges} "
            "grid edge; a wider search grid may score higher."
        )


def optimal_deterministic(
    params: ModelParams, config: OptimizationConfig, options: SolverOptions = None
) -> OptResult:
    """
    Open-loop optimum: pump with Ω until t_opt = min(t_ε, t_m), then let the dot and cavity empty into the bath.

    **Parameters**:

    * **params**: `ModelParams` - Ω, g, Γ, κ of the open-loop model (measurement fields are ignored).
    * **config**: `OptimizationConfig` - ε, the T_s grid and the refinement tolerance.
    * **options**: `SolverOptions` - Numerical options.

    Returns an `OptResult` whose `branch` tells whether the cap or the p(1) peak decided.
    """
    options = options or SolverOptions()
    curves = p_curves(params, Mode.DETERMINISTIC, config.ts_grid, options)
    result = result_from_curves(curves, config.epsilon, config.time_tolerance)
    warn_on_edge(result)
    _logger.debug(f"deterministic Ω={params.omega:g} g={params.g:g}: p1={result.best_p1:.6f} ({result.branch})")
    return result


def evaluate_task(task: GridTask, config: OptimizationConfig, options: SolverOptions) -> Optional[OptResult]:
    """
    Optimize the stopping time for one grid point. Returns `None` for ν₁ values the rate calculus cannot reach.

    Open-loop tasks are tagged `threshold` with γ = ν = 0 when they are part of a threshold search.
    """
    if Mode(task.mode) == Mode.DETERMINISTIC:
        curves = p_curves(task.params, Mode.DETERMINISTIC, config.ts_grid, options)
        return result_from_curves(curves, config.epsilon, config.time_tolerance)

    model = MeasurementModel(eta=task.params.eta, gamma_meas=task.gamma_meas, dt_window=task.params.dt_window)
    try:
        tau, nu0 = rates_for(task.nu1, model, approx=options.use_approx_rates)
    except DomainError as err:
        _logger.debug(f"skipping ν₁={task.nu1:g} at γ={task.gamma_meas:g}: {err.message}")
        return None
    point = task.params.copy(update={"gamma_meas": task.gamma_meas, "nu1": task.nu1, "nu0": nu0, "tau": tau})
    curves = p_curves(point, Mode.THRESHOLD, config.ts_grid, options)
    result = result_from_curves(curves, config.epsilon, config.time_tolerance)
    grid = config.nu1_grid
    if len(grid) > 1 and task.nu1 in (grid[0], grid[-1]):
        result = result.with_edge(EDGE_NU1)
    return result


def threshold_tasks(params: ModelParams, config: OptimizationConfig, group: int = 0) -> List[GridTask]:
    """Work items of one threshold search: every (γ, ν₁) pair, plus the open-loop point when requested."""
    tasks = []
    if config.include_deterministic:
        tasks.append(GridTask(group=group, mode=Mode.DETERMINISTIC, params=params))
    for gamma in config.gamma_set:
        for nu1 in config.nu1_grid:
            tasks.append(
                GridTask(group=group, mode=Mode.THRESHOLD, params=params, gamma_meas=gamma, nu1=float(nu1))
            )
    return tasks


def best_of(results: Sequence[Optional[OptResult]], params: ModelParams, epsilon: float) -> OptResult:
    """
    Reduce per-point optima of a threshold search in input order.

    The winner is the largest admissible p(1); its branch is `unconstrained` when the joint unconstrained argmax
    over (ν₁, T_s) already satisfies the cap and `constraint_saturated` otherwise. An empty search yields an
    `infeasible` result at T_s = 0.
    """
    results = [r for r in results if r is not None]
    admissible = [r for r in results if Branch(r.branch) != Branch.INFEASIBLE]
    if results and not admissible:
        fallback = max(results, key=lambda r: r.best_p1)
        return fallback.copy(update={"mode": Mode.THRESHOLD.value, "branch": Branch.INFEASIBLE.value})
    results = admissible
    if not results:
        _logger.warning(f"no admissible threshold point for Ω={params.omega:g}, g={params.g:g}.")
        return OptResult(
            mode=Mode.THRESHOLD,
            best_p1=0.0,
            p2_at_opt=0.0,
            p0_at_opt=1.0,
            t_switch=0.0,
            branch=Branch.INFEASIBLE,
            epsilon=epsilon,
            omega=params.omega,
            g=params.g,
        )
    best, joint = results[0], results[0]
    for result in results[1:]:
        if result.best_p1 > best.best_p1:
            best = result
        if result.p1_at_t_max > joint.p1_at_t_max:
            joint = result
    unconstrained = joint.p2_at_t_max <= epsilon
    branch = Branch.UNCONSTRAINED if unconstrained else Branch.CONSTRAINT_SATURATED
    best = best.copy(update={"mode": Mode.THRESHOLD.value, "branch": branch.value})
    warn_on_edge(best)
    return best


def optimal_threshold(
    params: ModelParams,
    config: OptimizationConfig,
    options: SolverOptions = None,
    workers: int = 1,
) -> OptResult:
    """
    Threshold-feedback optimum over γ ∈ `config.gamma_set`, ν₁ ∈ `config.nu1_grid` and T_s.

    For each (γ, ν₁) the threshold τ and ground-state rate ν₀ come from the rate calculus; ν₁ values outside its
    domain are skipped. With `config.include_deterministic` the open-loop point joins the search, so the result
    never falls below `optimal_deterministic`.
    """
    options = options or SolverOptions()
    tasks = threshold_tasks(params, config)
    results = ordered_map(partial(evaluate_task, config=config, options=options), tasks, workers)
    result = best_of(results, params, config.epsilon)
    _logger.info(
        f"threshold Ω={params.omega:g} g={params.g:g}: p1={result.best_p1:.6f} at γ={result.gamma_meas}, "
        f"ν₁={result.nu1} ({result.branch})"
    )
    return result


def calibrate_epsilon(
    params: ModelParams,
    target_p1: float,
    config: OptimizationConfig,
    options: SolverOptions = None,
) -> float:
    """
    Cap ε at which the open-loop optimum reaches `target_p1`.

    ε ↦ optimal_deterministic(ε).best_p1 is nondecreasing, so the root is bracketed between a vanishing cap and
    p(2+) at the unconstrained peak. Raises `DomainError` when `target_p1` exceeds the unconstrained maximum.
    """
    options = options or SolverOptions()
    curves = p_curves(params, Mode.DETERMINISTIC, config.ts_grid, options)
    t_max = find_t_max(curves, CALIBRATION_TIME_TOLERANCE)
    _, p1_max, p2_max = curves.evaluate(t_max)
    if target_p1 > p1_max + CALIBRATION_P1_TOLERANCE:
        raise DomainError(
            f"target p1={target_p1:g} exceeds the unconstrained maximum {p1_max:.6f} at T_s={t_max:.4g}.",
            value=target_p1,
        )
    if p2_max <= EPSILON_FLOOR or target_p1 >= p1_max:
        return float(min(max(p2_max, EPSILON_FLOOR), 1 - EPSILON_FLOOR))

    def shortfall(epsilon):
        return result_from_curves(curves, epsilon, CALIBRATION_TIME_TOLERANCE).best_p1 - target_p1

    if shortfall(EPSILON_FLOOR) >= 0:
        return EPSILON_FLOOR
    epsilon = brentq(shortfall, EPSILON_FLOOR, float(p2_max), xtol=1e-13)
    _logger.info(f"calibrated ε={epsilon:.9g} for target p1={target_p1:g}")
    return float(epsilon)


def unconstrained_epsilon(params: ModelParams, config: OptimizationConfig, options: SolverOptions = None) -> float:
    """p(2+) at the open-loop p(1) peak: the smallest cap that leaves the open-loop optimum unconstrained."""
    curves = p_curves(params, Mode.DETERMINISTIC, config.ts_grid, options or SolverOptions())
    p2 = curves.evaluate(find_t_max(curves, config.time_tolerance))[2]
    return float(min(max(p2, EPSILON_FLOOR), 1 - EPSILON_FLOOR))
