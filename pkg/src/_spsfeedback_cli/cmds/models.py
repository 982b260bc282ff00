import os
from enum import Enum
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Optional

import numpy as np
from pydantic import Field
from pydantic import validator

from _spsfeedback_cli.exceptions import ConfigError
from _spsfeedback_sdk.core.models import Model
from _spsfeedback_sdk.enums import Method
from _spsfeedback_sdk.enums import Mode
from _spsfeedback_sdk.generator.models import ModelParams
from _spsfeedback_sdk.optimize.models import OptimizationConfig

# config file key -> RunConfig / ModelParams field, per section
SECTIONS = {
    "model": {"omega": "omega", "g": "g", "gamma_sp": "gamma_sp", "kappa": "kappa"},
    "measurement": {
        "eta": "eta",
        "dt_window": "dt_window",
        "gamma": "gamma_meas",
        "gamma_meas": "gamma_meas",
        "nu1": "nu1",
        "nu0": "nu0",
        "tau": "tau",
    },
    "optimize": {
        "epsilon": "epsilon",
        "mode": "mode",
        "ts_grid": "ts_grid",
        "nu1_grid": "nu1_grid",
        "gamma_set": "gamma_set",
        "omega_grid": "omega_grid",
        "g_grid": "g_grid",
        "time_tolerance": "time_tolerance",
        "include_deterministic": "include_deterministic",
    },
    "run": {
        "ts": "t_switch",
        "t_switch": "t_switch",
        "t_end": "t_end",
        "samples": "samples",
        "method": "method",
        "figure": "figure",
        "variable": "variable",
        "out": "out",
        "format": "format",
        "dt": "dt",
        "workers": "workers",
        "keep_measurement_after_stop": "keep_measurement_after_stop",
        "use_approx_rates": "use_approx_rates",
        "validate_cross_method": "validate_cross_method",
    },
}
PARAM_SECTIONS = ("model", "measurement")
_MODE_ALIASES = {"det": Mode.DETERMINISTIC.value}


class Command(str, Enum):
    simulate = "simulate"
    sweep = "sweep"
    optimize = "optimize"
    figure = "figure"


class OutputFormat(str, Enum):
    csv = "csv"
    json = "json"


class SweepVariable(str, Enum):
    omega = "omega"
    g = "g"


def parse_grid(value) -> Optional[List[float]]:
    """
    Accept a list of numbers, a comma-separated string, or `start:stop:step` (stop inclusive).
    """
    if value is None or isinstance(value, (list, tuple, np.ndarray)):
        return value
    text = str(value).strip()
    if ":" in text:
        start, stop, step = (float(part) for part in text.split(":"))
        if step <= 0:
            raise ValueError(f"grid step must be positive, got {step}.")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(count)]
    return [float(part) for part in text.split(",") if part.strip()]


class RunConfig(Model):
    """
    Everything one CLI invocation needs: model rates, optimization search space, output target and solver flags.

    Built from the sections of a config file, then overridden by command-line flags.
    """

    command: Command
    params: ModelParams = Field(default_factory=ModelParams)
    mode: Optional[Mode] = None
    epsilon: Optional[float] = Field(None, gt=0, lt=1)
    ts_grid: Optional[List[float]] = None
    nu1_grid: Optional[List[float]] = None
    gamma_set: Optional[List[float]] = None
    omega_grid: Optional[List[float]] = None
    g_grid: Optional[List[float]] = None
    time_tolerance: Optional[float] = Field(None, gt=0)
    include_deterministic: Optional[bool] = None
    t_switch: float = Field(0.0, ge=0)
    t_end: Optional[float] = Field(None, gt=0)
    samples: int = Field(201, ge=2)
    method: Method = Method.SPECTRAL
    figure: Optional[int] = None
    variable: SweepVariable = SweepVariable.omega
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.csv
    dt: Optional[float] = Field(None, gt=0)
    workers: Optional[int] = Field(None, ge=1)
    keep_measurement_after_stop: Optional[bool] = None
    use_approx_rates: Optional[bool] = None
    validate_cross_method: Optional[bool] = None

    class Config:
        use_enum_values = False

    @validator("mode", pre=True)
    def _validate_mode(cls, value):  # noqa
        if isinstance(value, str):
            return _MODE_ALIASES.get(value.lower(), value.lower())
        return value

    @validator("ts_grid", "nu1_grid", "gamma_set", "omega_grid", "g_grid", pre=True)
    def _validate_grid(cls, value):  # noqa
        return parse_grid(value)

    @validator("figure")
    def _validate_figure(cls, value):  # noqa
        if value is not None and value not in (3, 4, 5):
            raise ValueError(f"figure must be one of 3, 4 or 5, got {value}.")
        return value

    @validator("out")
    def _validate_out(cls, value):  # noqa
        if value is None:
            return value
        parent = value.expanduser().absolute().parent
        if not parent.is_dir() or not os.access(parent, os.W_OK):
            raise ValueError(f"{value} is not a writable output path.")
        return value.expanduser()

    @classmethod
    def from_sections(cls, command: Command, sections: Dict[str, Dict[str, str]], **overrides) -> "RunConfig":
        """
        Merge config file sections with flag overrides (flags win, `None` flags are ignored).

        Overrides use `RunConfig` field names, except `omega`, `g`, `gamma` and `nu1`, which land on the model
        parameters.
        """
        values: Dict[str, Any] = {}
        params: Dict[str, Any] = {}
        for section, entries in sections.items():
            known = SECTIONS.get(section.lower())
            if known is None:
                raise ConfigError(f"Unknown config section [{section}]. Expected one of {list(SECTIONS)}.")
            for key, raw in entries.items():
                if key not in known:
                    raise ConfigError(f"Unknown key '{key}' in section [{section}].")
                target = params if section.lower() in PARAM_SECTIONS else values
                target[known[key]] = raw

        for name, field in (("omega", "omega"), ("g", "g"), ("gamma", "gamma_meas"), ("nu1", "nu1")):
            value = overrides.pop(name, None)
            if value is not None:
                params[field] = value
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(command=command, params=ModelParams(**params), **values)

    @property
    def resolved_mode(self) -> Mode:
        return Mode(self.mode) if self.mode is not None else Mode.DETERMINISTIC

    def optimization_config(self, epsilon: float = None) -> OptimizationConfig:
        """
        The `OptimizationConfig` this run searches with.

        In threshold mode a γ or ν₁ given on the model narrows the corresponding grid to that single value.
        """
        epsilon = self.epsilon if epsilon is None else epsilon
        if epsilon is None:
            raise ConfigError("A multi-photon cap is required: pass --epsilon or set epsilon in [optimize].")
        values: Dict[str, Any] = {"epsilon": epsilon}
        grids = {
            "ts_grid": self.ts_grid,
            "nu1_grid": self.nu1_grid or ([self.params.nu1] if self.params.nu1 > 0 else None),
            "gamma_set": self.gamma_set or ([self.params.gamma_meas] if self.params.gamma_meas > 0 else None),
            "omega_grid": self.omega_grid,
            "time_tolerance": self.time_tolerance,
            "include_deterministic": self.include_deterministic,
        }
        values.update({key: value for key, value in grids.items() if value is not None})
        return OptimizationConfig(**values)

    def simulator_settings(self) -> Dict[str, Any]:
        """Keyword arguments for `Simulator`; unset values fall through to the environment."""
        return {
            "rk4_dt": self.dt,
            "workers": self.workers,
            "keep_measurement_after_stop": self.keep_measurement_after_stop,
            "use_approx_rates": self.use_approx_rates,
            "validate_cross_method": self.validate_cross_method,
            "dt_window": self.params.dt_window,
            "eta": self.params.eta,
        }
