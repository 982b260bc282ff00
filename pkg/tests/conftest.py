import numpy as np
import pytest
from click.testing import CliRunner

from _spsfeedback_sdk.algebra.space import DEFAULT_DIMS
from _spsfeedback_sdk.algebra.space import DETERMINISTIC_DIMS
from _spsfeedback_sdk.algebra.space import make_space
from _spsfeedback_sdk.generator.models import ModelParams
from _spsfeedback_sdk.optimize.models import OptimizationConfig

TEST_EPSILON = 0.01
# coarser than the production grid, still resolves the p1 peak at Ω = g = 0.1
TEST_TS_GRID = np.arange(0.0, 100.5, 1.0)


@pytest.fixture(scope="session")
def runner():
    return CliRunner()


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Keep tests independent of a developer's SPSFEEDBACK_* environment and log directory."""
    for name in (
        "SPSFEEDBACK_LOG_LEVEL",
        "SPSFEEDBACK_LOG_FILE",
        "SPSFEEDBACK_LOG_STDERR",
        "SPSFEEDBACK_WORKERS",
        "SPSFEEDBACK_RK4_DT",
        "SPSFEEDBACK_USE_APPROX_RATES",
        "SPSFEEDBACK_VALIDATE_CROSS_METHOD",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("SPSFEEDBACK_LOG_FILE", str(tmp_path / "spsfeedback_test.log"))
    monkeypatch.chdir(tmp_path)


@pytest.fixture(scope="session")
def feedback_space():
    return make_space(DEFAULT_DIMS)


@pytest.fixture(scope="session")
def open_loop_space():
    return make_space(DETERMINISTIC_DIMS)


@pytest.fixture(scope="session")
def params():
    return ModelParams()


@pytest.fixture(scope="session")
def feedback_params():
    return ModelParams(gamma_meas=1.0, nu1=0.5, nu0=0.05)


@pytest.fixture(scope="session")
def coarse_config():
    return OptimizationConfig(
        epsilon=TEST_EPSILON,
        ts_grid=TEST_TS_GRID,
        nu1_grid=[0.5, 1.0, 2.0],
        gamma_set=(1.0, 10.0),
        omega_grid=[0.05, 0.1],
    )
