"""
Figure-style sweeps over the pump rate Ω and the coupling g.

Every (abscissa, curve, γ, ν₁) combination becomes one `GridTask`; all tasks of a sweep go through a single
ordered map and are reduced per group afterwards.
"""
import logging
from collections import defaultdict
from functools import partial
from typing import Dict
from typing import List
from typing import Sequence
from typing import Tuple

from _spsfeedback_sdk.enums import Mode
from _spsfeedback_sdk.exceptions import NumericError
from _spsfeedback_sdk.generator.models import ModelParams
from _spsfeedback_sdk.optimize.models import GridTask
from _spsfeedback_sdk.optimize.models import OptimizationConfig
from _spsfeedback_sdk.optimize.models import OptResult
from _spsfeedback_sdk.optimize.models import SweepPoint
from _spsfeedback_sdk.optimize.parallel import ordered_map
from _spsfeedback_sdk.optimize.search import best_of
from _spsfeedback_sdk.optimize.search import evaluate_task
from _spsfeedback_sdk.optimize.search import threshold_tasks
from _spsfeedback_sdk.optimize.search import warn_on_edge
from _spsfeedback_sdk.propagate.models import SolverOptions

_logger = logging.getLogger("spsfeedback.optimize")

DETERMINISTIC_CURVE = "deterministic"
THRESHOLD_CURVE = "threshold"


def gamma_curve(gamma: float) -> str:
    return f"gamma={gamma:g}"


def _run(tasks: List[GridTask], config, options, workers) -> Dict[int, list]:
    results = ordered_map(partial(evaluate_task, config=config, options=options), tasks, workers)
    grouped = defaultdict(list)
    for task, result in zip(tasks, results):
        grouped[task.group].append(result)
    return grouped


def _best_open_loop(results: Sequence[OptResult]) -> OptResult:
    best = results[0]
    for result in results[1:]:
        if result.best_p1 > best.best_p1:
            best = result
    return best


def sweep_pumping(
    omega_grid: Sequence[float],
    g: float,
    config: OptimizationConfig,
    params: ModelParams = None,
    options: SolverOptions = None,
    workers: int = 1,
) -> List[SweepPoint]:
    """
    p(1) optimum versus pump rate: the open-loop curve plus one threshold curve per γ in `config.gamma_set`.

    Rows come in ascending Ω; within one Ω the open-loop row is first, then γ ascending. ν₁ and T_s are optimized
    per point; the open-loop point is not part of the per-γ searches.
    """
    options = options or SolverOptions()
    base = (params or ModelParams()).copy(update={"g": g})
    tasks, labels = [], {}
    for omega in omega_grid:
        point = base.copy(update={"omega": float(omega)})
        group = len(labels)
        labels[group] = (DETERMINISTIC_CURVE, float(omega), point)
        tasks.append(GridTask(group=group, mode=Mode.DETERMINISTIC, params=point))
        for gamma in config.gamma_set:
            group = len(labels)
            labels[group] = (gamma_curve(gamma), float(omega), point)
            single = OptimizationConfig(**{**config.__dict__, "gamma_set": (gamma,), "include_deterministic": False})
            tasks.extend(threshold_tasks(point, single, group=group))

    _logger.info(f"Ω sweep: {len(omega_grid)} points, {len(tasks)} grid tasks")
    grouped = _run(tasks, config, options, workers)
    rows = []
    for group, (curve, omega, point) in labels.items():
        results = grouped[group]
        if curve == DETERMINISTIC_CURVE:
            result = results[0]
            warn_on_edge(result)
        else:
            result = best_of(results, point, config.epsilon)
        rows.append(SweepPoint(curve=curve, variable="omega", value=omega, result=result))
    return rows


def sweep_coupling(
    g_grid: Sequence[float],
    config: OptimizationConfig,
    params: ModelParams = None,
    options: SolverOptions = None,
    workers: int = 1,
) -> List[SweepPoint]:
    """
    p(1) optimum versus coupling g, optimized over Ω ∈ `config.omega_grid` as well.

    Each g yields a `deterministic` row (best open-loop Ω) and a `threshold` row (best over Ω, γ, ν₁); the
    threshold search includes the open-loop points, so it never scores below the deterministic row.
    """
    options = options or SolverOptions()
    base = params or ModelParams()
    tasks: List[GridTask] = []
    groups: List[Tuple[float, int, int]] = []
    for g in g_grid:
        open_loop, feedback = 2 * len(groups), 2 * len(groups) + 1
        groups.append((float(g), open_loop, feedback))
        for omega in config.omega_grid:
            point = base.copy(update={"g": float(g), "omega": float(omega)})
            tasks.append(GridTask(group=open_loop, mode=Mode.DETERMINISTIC, params=point))
            tasks.extend(threshold_tasks(point, config.copy(update={"include_deterministic": True}), group=feedback))

    _logger.info(f"g sweep: {len(g_grid)} points, {len(tasks)} grid tasks")
    grouped = _run(tasks, config, options, workers)
    rows = []
    for g, open_loop, feedback in groups:
        deterministic = _best_open_loop(grouped[open_loop])
        threshold = best_of(grouped[feedback], base.copy(update={"g": g}), config.epsilon)
        if threshold.best_p1 < deterministic.best_p1:
            raise NumericError(
                f"threshold optimum {threshold.best_p1:.9g} at g={g:g} is below the open-loop optimum "
                f"{deterministic.best_p1:.9g} it was searched against."
            )
        warn_on_edge(deterministic)
        rows.append(SweepPoint(curve=DETERMINISTIC_CURVE, variable="g", value=g, result=deterministic))
        rows.append(SweepPoint(curve=THRESHOLD_CURVE, variable="g", value=g, result=threshold))
    return rows
