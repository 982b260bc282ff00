"""
Threshold-crossing probabilities of the window-averaged measurement signal and the control switch-off rates they
induce.

All functions are pure; `MeasurementModel` carries η, γ, Δt and τ.
"""
import logging
import math
from typing import Tuple

from scipy.optimize import brentq
from scipy.special import erfc

from _spsfeedback_sdk.exceptions import DomainError
from _spsfeedback_sdk.rates.models import MeasurementModel

_logger = logging.getLogger("spsfeedback.rates")

# bracket for the normalized threshold when root-finding
T_MIN = 1.0
T_MAX = 50.0


def _clip_probability(p: float) -> float:
    return min(max(p, 0.0), 1.0)


def exceed_probability_exact(mu: float, model: MeasurementModel) -> float:
    """P(ī > τ) = ½ erfc(√(ηγΔt/2) (T − μ)) for a dot with excited population μ."""
    z = math.sqrt(model.strength / 2.0) * (model.T_big - mu)
    return _clip_probability(0.5 * float(erfc(z)))


def exceed_probability_approx(mu: float, model: MeasurementModel) -> float:
    """
    First-order tail expansion exp(−ηγΔt (T − μ)²/2) / (√(2πηγΔt) (T − μ)).

    Only defined for T > μ and a measurement that is actually running; it overestimates the exact tail and is
    capped at 1.
    """
    gap = model.T_big - mu
    strength = model.strength
    if gap <= 0:
        raise DomainError(f"the tail expansion needs T > μ, got T - μ = {gap:g}.", value=gap)
    if strength <= 0:
        raise DomainError("the tail expansion needs ηγΔt > 0.", value=strength)
    p = math.exp(-strength * gap * gap / 2.0) / (math.sqrt(2.0 * math.pi * strength) * gap)
    return _clip_probability(p)


def switch_rate(mu: float, model: MeasurementModel, approx: bool = False) -> float:
    """Rate ν_μ = P(ī > τ)/Δt at which the control is switched off."""
    if approx:
        p = exceed_probability_approx(mu, model)
    else:
        p = exceed_probability_exact(mu, model)
    return p / model.dt_window


def _log_argument(nu1: float, model: MeasurementModel) -> float:
    strength = model.strength
    if nu1 <= 0 or strength <= 0:
        raise DomainError(
            f"closed-form thresholds need ν₁ > 0 and ηγΔt > 0, got ν₁={nu1:g}, ηγΔt={strength:g}.",
            value=nu1,
        )
    denominator = nu1 * model.dt_window * math.sqrt(2.0 * math.pi * strength)
    if denominator >= 1.0:
        raise DomainError(
            f"requested ν₁={nu1:g} is too large for a threshold regime (ν₁Δt√(2πηγΔt) = {denominator:.4g} ≥ 1).",
            value=nu1,
        )
    return math.log(1.0 / denominator)


def tau_from_nu1(nu1: float, model: MeasurementModel, exact: bool = False) -> float:
    """
    Threshold τ that makes the excited-state switch-off rate equal `nu1`.

    By default the quadratic closed form T = 1 + √(1 + (2/ηγΔt) ln(1/(ν₁Δt√(2πηγΔt)))) is used, keeping the
    leading "1 +" term. With `exact=True`, T is root-found so that `switch_rate(1)` reproduces ν₁ with the exact
    erfc tail.
    """
    if exact:
        return _root_T(nu1, model) * model.dt_window
    log_arg = _log_argument(nu1, model)
    T = 1.0 + math.sqrt(1.0 + (2.0 / model.strength) * log_arg)
    return T * model.dt_window


def nu0_from_nu1(nu1: float, model: MeasurementModel) -> float:
    """Closed-form ground-state rate ν₀ ≈ ν₁ exp(−√(2ηγΔt ln(1/(ν₁Δt√(2πηγΔt)))))."""
    log_arg = _log_argument(nu1, model)
    return nu1 * math.exp(-math.sqrt(2.0 * model.strength * log_arg))


def _root_T(nu1: float, model: MeasurementModel) -> float:
    def residual(T):
        return switch_rate(1.0, model.with_tau(T * model.dt_window)) - nu1

    lo, hi = residual(T_MIN), residual(T_MAX)
    if not (lo > 0 > hi):
        raise DomainError(
            f"no threshold T in ({T_MIN:g}, {T_MAX:g}] gives ν₁={nu1:g} "
            f"(attainable range ({hi + nu1:.3g}, {lo + nu1:.3g})).",
            value=nu1,
        )
    return brentq(residual, T_MIN, T_MAX, xtol=1e-14, maxiter=200)


def nu0_oracle(nu1: float, model: MeasurementModel) -> float:
    """Brute-force ν₀: root-find T from ν₁ with the exact tail, then evaluate the μ = 0 rate."""
    T = _root_T(nu1, model)
    return switch_rate(0.0, model.with_tau(T * model.dt_window))


def rates_for(nu1: float, model: MeasurementModel, approx: bool = False) -> Tuple[float, float]:
    """
    Threshold τ and ground-state rate ν₀ that accompany a requested ν₁.

    The exact erfc root-find is the default; `approx=True` uses the closed forms.
    """
    if approx:
        tau, nu0 = tau_from_nu1(nu1, model), nu0_from_nu1(nu1, model)
    else:
        tau = tau_from_nu1(nu1, model, exact=True)
        nu0 = switch_rate(0.0, model.with_tau(tau))
    if not model.with_tau(tau).asymptotics_valid:
        _logger.debug(f"ν₁={nu1:g}: T={tau / model.dt_window:.3g} is below the asymptotic regime.")
    return tau, nu0


def complete_rates(params, approx: bool = False):
    """
    Fill in τ and ν₀ for a `ModelParams` that only names ν₁ and γ.

    Parameters that already carry a ν₀ (or have no measurement) are returned unchanged.
    """
    if params.nu0 > 0 or params.nu1 <= 0 or params.gamma_meas <= 0:
        return params
    tau, nu0 = rates_for(params.nu1, MeasurementModel.from_params(params), approx=approx)
    _logger.info(f"derived τ={tau:.6g}, ν₀={nu0:.6g} from ν₁={params.nu1:g} at γ={params.gamma_meas:g}")
    return params.copy(update={"tau": tau, "nu0": nu0})
