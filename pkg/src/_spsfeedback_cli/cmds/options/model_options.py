import click

from _spsfeedback_cli.file_readers import AutoDecodedFile

config_option = click.option(
    "--config",
    "-c",
    "config_file",
    type=AutoDecodedFile("r"),
    default=None,
    help="Run configuration file with [model], [measurement], [optimize] and [run] sections of `key = value` lines. "
    "Flags override values from the file.",
)

mode_option = click.option(
    "--mode",
    "-m",
    type=click.Choice(["det", "deterministic", "threshold"], case_sensitive=False),
    default=None,
    help="Open-loop pumping ('det') or threshold feedback ('threshold').",
)

epsilon_option = click.option(
    "--epsilon",
    type=float,
    default=None,
    help="Cap ε on the multi-photon probability p(2+).",
)

dt_option = click.option(
    "--dt",
    type=float,
    default=None,
    help="Runge-Kutta step in units of 1/κ. Overrides SPSFEEDBACK_RK4_DT.",
)

workers_option = click.option(
    "--workers",
    type=int,
    default=None,
    help="Number of worker processes for parameter grids. Results do not depend on it.",
)


def model_options(f):
    """Rate overrides applied on top of the [model] and [measurement] sections."""
    f = click.option("--omega", type=float, default=None, help="Pump rate Ω in units of κ.")(f)
    f = click.option("--g", "g", type=float, default=None, help="Dot-cavity coupling g in units of κ.")(f)
    f = click.option("--gamma", type=float, default=None, help="Measurement rate γ in units of κ.")(f)
    f = click.option("--nu1", type=float, default=None, help="Control switch-off rate ν₁ in units of κ.")(f)
    return f


def solver_options(f):
    f = dt_option(f)
    f = click.option(
        "--keep-measurement/--stop-measurement",
        "keep_measurement_after_stop",
        default=None,
        help="Keep measurement and switching active after the forced stop at T_s.",
    )(f)
    f = click.option(
        "--approx-rates/--exact-rates",
        "use_approx_rates",
        default=None,
        help="Derive ν₀ from ν₁ with the closed-form relation instead of the exact root-find.",
    )(f)
    f = click.option(
        "--validate-cross-method",
        is_flag=True,
        default=None,
        help="Cross-check spectral results against Runge-Kutta and report the residual.",
    )(f)
    return f
