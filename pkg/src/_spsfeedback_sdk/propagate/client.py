from typing import Sequence

import numpy as np

from _spsfeedback_sdk.enums import Method
from _spsfeedback_sdk.enums import Mode
from _spsfeedback_sdk.enums import Pumping
from _spsfeedback_sdk.generator.liouvillian import build_deterministic
from _spsfeedback_sdk.generator.liouvillian import build_feedback
from _spsfeedback_sdk.generator.models import ModelParams
from _spsfeedback_sdk.observables.models import SimulationDiagnostics
from _spsfeedback_sdk.observables.models import SimulationResult
from _spsfeedback_sdk.observables.stats import control_on_population
from _spsfeedback_sdk.observables.stats import emission_stats
from _spsfeedback_sdk.observables.stats import excited_population
from _spsfeedback_sdk.propagate.evolution import sample_two_phase
from _spsfeedback_sdk.propagate.evolution import trace_norm_difference
from _spsfeedback_sdk.propagate.evolution import two_phase_evolve
from _spsfeedback_sdk.propagate.models import DensityState
from _spsfeedback_sdk.propagate.models import SwitchPlan
from _spsfeedback_sdk.propagate.rk4 import rk4_evolve
from _spsfeedback_sdk.rates.threshold import complete_rates

# relaxation window sampled after the stop when no end time is given
DEFAULT_TAIL = 50.0


class PropagationClient:
    """
    Two-phase simulations with the parent `Simulator`'s settings.

    Usage example:

        >>> import spsfeedback
        >>> sim = spsfeedback.Simulator()
        >>> result = sim.propagation.simulate(spsfeedback.models.ModelParams(), t_switch=10)
        >>> result.asymptotic.p1
    """

    def __init__(self, parent):
        self._parent = parent

    def plan(self, params: ModelParams, mode: Mode = Mode.DETERMINISTIC, t_switch: float = 0.0) -> SwitchPlan:
        """Pumping-on and pumping-off generators for `params`, on the charge sector when sector reduction is on."""
        settings = self._parent.settings
        restrict = settings.use_sector_reduction
        if Mode(mode) == Mode.DETERMINISTIC:
            on = build_deterministic(params, Pumping.ON, restrict=restrict)
            off = build_deterministic(params, Pumping.OFF, restrict=restrict)
        else:
            keep = settings.keep_measurement_after_stop
            on = build_feedback(params, Pumping.ON, restrict=restrict, keep_measurement_after_stop=keep)
            off = build_feedback(
                params, Pumping.OFF, restrict=restrict, keep_measurement_after_stop=keep, warn=False
            )
        return SwitchPlan(generator_on=on, generator_off=off, t_switch=t_switch)

    def simulate(
        self,
        params: ModelParams,
        mode: Mode = Mode.DETERMINISTIC,
        t_switch: float = 0.0,
        t_end: float = None,
        samples: int = 201,
        method: Method = Method.SPECTRAL,
        times: Sequence[float] = None,
    ) -> SimulationResult:
        """
        Pump from |G,0,0⟩ (control ON for feedback runs) until `t_switch`, then relax.

        **Parameters**:

        * **params**: `ModelParams` - Rates for both phases.
        * **mode**: `Mode` - `deterministic` or `threshold`.
        * **t_switch**: `float` - Stopping time T_s.
        * **t_end**: `float` - End of the sampled trajectory. Defaults to T_s + 50.
        * **samples**: `int` - Number of evenly spaced samples when `times` is not given.
        * **method**: `Method` - Propagator for the trajectory and ρ(T_s).
        * **times**: `Sequence[float]` - Explicit sample times.

        **Returns**: A `SimulationResult` with emission statistics at T_s and asymptotically, the trajectory and
        diagnostics (largest trace error and, with `validate_cross_method`, the gap between the chosen method and RK4
        at T_s). For threshold runs that leave ν₀ at zero, τ and ν₀ are derived from ν₁ first.
        """
        options = self._parent.options
        if Mode(mode) == Mode.THRESHOLD:
            params = complete_rates(params, approx=options.use_approx_rates)
        plan = self.plan(params, mode, t_switch)
        rho0 = DensityState.initial(plan.generator_on.space)
        if times is None:
            end = t_switch + DEFAULT_TAIL if t_end is None else t_end
            times = np.linspace(0.0, end, samples)
        trajectory = sample_two_phase(plan, rho0, times, method, options)
        at_switch, asymptote = two_phase_evolve(plan, rho0, method, options)

        residual = None
        if options.validate_cross_method:
            reference = rk4_evolve(plan.generator_on, rho0, t_switch, options.rk4_dt).final
            residual = trace_norm_difference(reference, at_switch)
        n = rho0.space.total_dim
        traces = np.trace(trajectory.vecs.reshape(-1, n, n), axis1=1, axis2=2)
        trace_error = float(np.abs(traces - 1.0).max(initial=0.0))
        has_control = rho0.space.has_control
        return SimulationResult(
            params=params,
            mode=mode,
            t_switch=t_switch,
            at_switch=emission_stats(at_switch),
            asymptotic=emission_stats(asymptote),
            excited_at_switch=excited_population(at_switch),
            control_on_at_switch=control_on_population(at_switch) if has_control else None,
            diagnostics=SimulationDiagnostics(
                trace_error=trace_error, method_residual=residual, method=trajectory.method
            ),
            trajectory=trajectory,
        )
