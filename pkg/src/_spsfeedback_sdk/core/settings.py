import logging
import sys
import warnings
from io import IOBase
from pathlib import Path
from typing import Union

from pydantic import BaseSettings
from pydantic import Field
from pydantic import root_validator
from pydantic import validator
from rich import pretty
from rich.console import Console
from rich.logging import RichHandler

from _spsfeedback_sdk.enums import _Enum
from _spsfeedback_sdk.propagate.models import SolverOptions

# capture default displayhook so we can "uninstall" rich
_sys_displayhook = sys.displayhook
_sps_console = Console(stderr=True)


_log_level_map = {"ERROR": 40, "WARNING": 30, "WARN": 30, "INFO": 20, "DEBUG": 10}


class LogLevel(_Enum):
    ERROR = "ERROR"
    WARNING = "WARNING"
    WARN = "WARN"
    INFO = "INFO"
    DEBUG = "DEBUG"

    @classmethod
    def _missing_(cls, value):
        if isinstance(value, str) and value.upper() in cls.__members__:
            return cls[value.upper()]
        raise ValueError(
            f"'{value}' is not a valid {cls.__name__}. Expected one of {[member.value for member in cls]}"
        )


_std_log_formatter = logging.Formatter(
    fmt="%(asctime)s - %(name)s:%(levelname)s - %(message)s", datefmt="[%x %X]"
)
_rich_log_formatter = logging.Formatter(fmt="%(message)s", datefmt="[%x %X]")


class SimulatorSettings(BaseSettings):
    """
    Configure settings on the `spsfeedback.Simulator`.

    Usage:

        >>> import spsfeedback
        >>> sim = spsfeedback.Simulator()
        >>> sim.settings.rk4_dt = 5e-4

    Settings can also be loaded from shell environment variables or .env files. Just prefix a setting's attribute name
    with `SPSFEEDBACK_` when configuring via environment vars.

    For example: To load `sim.settings.workers` from the environment, set `SPSFEEDBACK_WORKERS=4`.

    The `spsfeedback.Simulator` loads settings in the following priority:

    - Args passed to `Simulator` constructor
    - Shell environment variables
    - An .env file in the current working directory
    - An .env file in `~/.config/spsfeedback` directory

    **Numerical attributes**:

    * **rk4_dt**: `float` Runge-Kutta step in units of 1/κ. Defaults to 1e-3. env_var=`SPSFEEDBACK_RK4_DT`
    * **condition_limit**: `float` Eigenvector condition number above which a spectral decomposition is treated as
        defective and callers fall back to RK4. Defaults to 1e10. env_var=`SPSFEEDBACK_CONDITION_LIMIT`
    * **stable_tolerance**: `float` Eigenvalues with |Re λ| below this are classified as stable. Defaults to 1e-10.
    * **use_sector_reduction**: `bool` Restrict generators to the charge-diagonal invariant subspace before
        decomposing them. Defaults to True.
    * **workers**: `int` Number of worker processes for parameter grids. Defaults to 1.
    * **keep_measurement_after_stop**: `bool` Keep γ, ν₀ and ν₁ active after the forced stop at T_s.
        Defaults to False.
    * **use_approx_rates**: `bool` Derive ν₀ from ν₁ with the closed-form relation instead of the exact erfc
        root-find. Defaults to False.
    * **validate_cross_method**: `bool` Re-run every propagation with RK4 and record the residual. Defaults to False.
    * **dt_window**: `float` Averaging window Δt of the measurement signal in units of 1/κ. Defaults to 0.1.
    * **eta**: `float` Measurement efficiency η. Defaults to 1.0.

    **Logging attributes**:

    * **log_stderr**: `bool` Enables logging to stderr. Defaults to True. env_var=`SPSFEEDBACK_LOG_STDERR`
    * **log_file**: `str` The file path or file-like object to write log output to. Defaults to None.
    * **log_level**: `int` The level for logging messages. Defaults to `logging.WARNING`.
    * **logger**: `logging.Logger` The logger used for simulator logging. Cannot be defined via environment variable.
        If a custom `Logger` is supplied, the other log settings will have no effect.
    * **use_rich**: `bool` Enables [rich](https://rich.readthedocs.io/en/stable/introduction.html) support in logging
        and the Python repl. Defaults to True.
    """

    rk4_dt: float = Field(default=1e-3, gt=0, env="spsfeedback_rk4_dt")
    condition_limit: float = Field(default=1e10, gt=1, env="spsfeedback_condition_limit")
    stable_tolerance: float = Field(
        default=1e-10, gt=0, env="spsfeedback_stable_tolerance"
    )
    use_sector_reduction: bool = Field(
        default=True, env="spsfeedback_use_sector_reduction"
    )
    workers: int = Field(default=1, ge=1, env="spsfeedback_workers")
    keep_measurement_after_stop: bool = Field(
        default=False, env="spsfeedback_keep_measurement_after_stop"
    )
    use_approx_rates: bool = Field(default=False, env="spsfeedback_use_approx_rates")
    validate_cross_method: bool = Field(
        default=False, env="spsfeedback_validate_cross_method"
    )
    dt_window: float = Field(default=0.1, gt=0, env="spsfeedback_dt_window")
    eta: float = Field(default=1.0, gt=0, le=1, env="spsfeedback_eta")

    use_rich: bool = Field(default=True, env="spsfeedback_use_rich")
    log_stderr: bool = Field(default=True, env="spsfeedback_log_stderr")
    log_file: Union[str, Path, IOBase] = Field(default=None, env="spsfeedback_log_file")
    log_level: Union[int, str] = Field(
        default=logging.WARNING,
        env="spsfeedback_log_level",
    )
    logger: logging.Logger = None

    def __init__(self, **kwargs):
        # clear any keys from kwargs that are passed as None, which forces lookup of values
        kwargs = {k: v for k, v in kwargs.items() if v is not None}

        # if .env file in CWD, use it instead of ~/.config/spsfeedback/.env
        if Path(".env").exists():
            kwargs["_env_file"] = ".env"
        super().__init__(**kwargs)

    class Config:
        env_file = str(Path.home() / ".config" / "spsfeedback" / ".env")
        validate_assignment = True
        arbitrary_types_allowed = True

    @validator("log_level", pre=True, always=True)
    def _validate_log_level(cls, value, **kwargs):  # noqa
        try:
            return int(value)
        except ValueError:
            return _log_level_map[LogLevel(value).value]

    @validator("log_file")
    def _validate_log_file(cls, value, **kwargs):  # noqa
        if isinstance(value, (str, Path)):
            p = Path(value)
            # existing file OK
            if p.exists() and p.is_file():
                value = str(p.absolute())
            # new file in existing dir OK
            elif not p.exists() and p.parent.is_dir():
                value = str(p.absolute())
            else:
                raise ValueError(f"{value} is not a valid file path for logging.")
        return value

    @validator("use_rich")
    def _validate_use_rich(cls, value, **kwargs):  # noqa
        if value:
            pretty.install()
        else:
            sys.displayhook = _sys_displayhook
        return value

    @validator("logger")
    def _validate_logger(cls, value, **kwargs):  # noqa
        if value is None:
            logger = logging.getLogger("spsfeedback")
            # flag the logger we create so user-provided loggers can be detected later
            logger._spsfeedback = True
            return logger
        if isinstance(value, logging.Logger):
            return value
        else:
            raise ValueError(f"{value} is not a `logging.Logger`.")

    @root_validator(skip_on_failure=True)
    def configure_logging(cls, values):  # noqa
        use_rich = values["use_rich"]
        log_file = values["log_file"]
        log_stderr = values["log_stderr"]
        log_level = values["log_level"]
        logger = values["logger"]

        if not hasattr(logger, "_spsfeedback"):
            warnings.warn(
                "A custom logger has been set, all other log-related settings on the `spsfeedback.Simulator` are "
                "ignored for custom loggers.",
                stacklevel=2,
            )
            return values

        logger.handlers.clear()

        if log_stderr and use_rich:
            rich_handler = RichHandler(console=_sps_console, rich_tracebacks=True)
            rich_handler.setFormatter(_rich_log_formatter)
            logger.addHandler(rich_handler)

        elif log_stderr and not use_rich:
            std_handler = logging.StreamHandler()
            std_handler.setFormatter(_std_log_formatter)
            logger.addHandler(std_handler)

        if log_file and use_rich:
            if isinstance(log_file, str):
                log_file = open(log_file, "a", encoding="utf-8")
            console = Console(file=log_file, no_color=True, width=200)
            rich_file_handler = RichHandler(console=console, rich_tracebacks=True)
            rich_file_handler.setFormatter(_rich_log_formatter)
            logger.addHandler(rich_file_handler)

        elif log_file and not use_rich:
            if isinstance(log_file, str):
                std_file_handler = logging.FileHandler(
                    filename=log_file, encoding="utf-8"
                )
            else:
                std_file_handler = logging.StreamHandler(stream=log_file)
            std_file_handler.setFormatter(_std_log_formatter)
            logger.addHandler(std_file_handler)

        logger.setLevel(log_level)
        values["logger"] = logger
        return values

    def solver_options(self) -> SolverOptions:
        """Snapshot the numerical settings as a picklable `SolverOptions`."""
        return SolverOptions(
            rk4_dt=self.rk4_dt,
            condition_limit=self.condition_limit,
            stable_tolerance=self.stable_tolerance,
            use_sector_reduction=self.use_sector_reduction,
            validate_cross_method=self.validate_cross_method,
            keep_measurement_after_stop=self.keep_measurement_after_stop,
            use_approx_rates=self.use_approx_rates,
        )
