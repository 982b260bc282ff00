import json

import pytest

from _spsfeedback_cli.cmds.utils import RESULT_COLUMNS
from _spsfeedback_cli.cmds.utils import SWEEP_COLUMNS
from _spsfeedback_cli.main import spsfeedback
from _spsfeedback_sdk.__version__ import __version__
from _spsfeedback_sdk.exceptions import NumericError
from _spsfeedback_sdk.observables.stats import TRAJECTORY_COLUMNS
from _spsfeedback_sdk.propagate.client import PropagationClient

COARSE_CONFIG = """
[model]
omega = 0.05
g = 0.1

[optimize]
epsilon = 0.01
ts_grid = 0:100:1
omega_grid = 0.05, 0.1
"""


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text(COARSE_CONFIG)
    return str(path)


def _data_lines(output):
    return [line for line in output.splitlines() if line and not line.startswith("Wrote")]


def test_version(runner):
    result = runner.invoke(spsfeedback, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_unknown_command_suggests_close_match(runner):
    result = runner.invoke(spsfeedback, ["simulat"])
    assert result.exit_code == 2
    assert "Did you mean simulate?" in result.output


def test_simulate_writes_trajectory_csv_to_stdout(runner):
    result = runner.invoke(spsfeedback, ["simulate", "--mode", "det", "--ts", "0", "--samples", "3"])
    assert result.exit_code == 0, result.output
    lines = _data_lines(result.output)
    assert lines[0] == ",".join(TRAJECTORY_COLUMNS)
    assert len(lines) == 4
    first = dict(zip(TRAJECTORY_COLUMNS, lines[1].split(",")))
    assert first["time"] == "0"
    assert first["p0"] == "1"
    assert first["pcontrol_on"] == ""


def test_simulate_json_summary(runner):
    result = runner.invoke(spsfeedback, ["simulate", "-m", "det", "--ts", "5", "--samples", "3", "-f", "json"])
    assert result.exit_code == 0, result.output
    document = json.loads(result.output)
    assert set(document) == {"params", "result", "diagnostics", "version"}
    assert document["version"] == __version__
    assert document["result"]["mode"] == "deterministic"
    assert document["result"]["asymptotic"]["source_time"] == "asymptotic"
    stats = document["result"]["asymptotic"]
    assert stats["p0"] + stats["p1"] + stats["p2plus"] == pytest.approx(1, abs=1e-8)


def test_simulate_out_writes_companion_summary(runner, tmp_path):
    out = tmp_path / "run.csv"
    result = runner.invoke(spsfeedback, ["simulate", "--ts", "2", "--samples", "5", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_text().splitlines()[0] == ",".join(TRAJECTORY_COLUMNS)
    assert len(out.read_text().splitlines()) == 6
    summary = json.loads((tmp_path / "run.json").read_text())
    assert summary["result"]["t_switch"] == 2.0


def test_simulate_threshold_reports_control_population(runner):
    result = runner.invoke(
        spsfeedback,
        [
            "simulate",
            "--mode",
            "threshold",
            "--gamma",
            "1",
            "--nu1",
            "0.5",
            "--ts",
            "2",
            "--samples",
            "2",
            "-f",
            "json",
        ],
    )
    assert result.exit_code == 0, result.output
    document = json.loads(result.output)
    assert document["params"]["nu0"] > 0
    assert 0 <= document["result"]["control_on_at_switch"] <= 1


def test_invalid_rate_is_a_config_error(runner):
    result = runner.invoke(spsfeedback, ["simulate", "--omega", "-1"])
    assert result.exit_code == 2
    assert "omega" in result.output


def test_optimize_requires_epsilon(runner):
    result = runner.invoke(spsfeedback, ["optimize", "--mode", "det"])
    assert result.exit_code == 2
    assert "multi-photon cap is required" in result.output


def test_unknown_config_section_is_rejected(runner, tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[physics]\nomega = 0.1\n")
    result = runner.invoke(spsfeedback, ["simulate", "-c", str(path)])
    assert result.exit_code == 2
    assert "Unknown config section [physics]" in result.output


def test_unknown_config_key_is_rejected(runner, tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[model]\nomega = 0.1\ndelta = 2\n")
    result = runner.invoke(spsfeedback, ["simulate", "-c", str(path)])
    assert result.exit_code == 2
    assert "Unknown key 'delta'" in result.output


def test_optimize_reads_config_file(runner, config_file):
    result = runner.invoke(spsfeedback, ["optimize", "-c", config_file, "--mode", "det", "-f", "json"])
    assert result.exit_code == 0, result.output
    document = json.loads(result.output)
    assert document["params"]["omega"] == 0.05
    assert document["result"]["mode"] == "deterministic"
    assert document["result"]["p2_at_opt"] <= 0.01 + 1e-6
    assert document["diagnostics"]["epsilon"] == 0.01


def test_flags_override_config_file(runner, config_file):
    result = runner.invoke(
        spsfeedback, ["optimize", "-c", config_file, "--mode", "det", "--omega", "0.1", "--epsilon", "0.02"]
    )
    assert result.exit_code == 0, result.output
    lines = _data_lines(result.output)
    assert lines[0] == ",".join(RESULT_COLUMNS)
    row = dict(zip(RESULT_COLUMNS, lines[1].split(",")))
    assert row["omega"] == "0.1"
    assert row["epsilon"] == "0.02"


def test_sweep_open_loop_rows(runner, config_file):
    result = runner.invoke(spsfeedback, ["sweep", "-c", config_file, "--mode", "det"])
    assert result.exit_code == 0, result.output
    lines = _data_lines(result.output)
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    rows = [dict(zip(SWEEP_COLUMNS, line.split(","))) for line in lines[1:]]
    assert [(row["curve"], row["value"]) for row in rows] == [("deterministic", "0.05"), ("deterministic", "0.1")]
    assert all(row["variable"] == "omega" for row in rows)


@pytest.mark.parametrize("workers", ["1", "4"])
def test_sweep_output_does_not_depend_on_workers(runner, config_file, tmp_path, workers):
    out = tmp_path / f"sweep-{workers}.csv"
    args = ["sweep", "-c", config_file, "--mode", "threshold", "--gamma", "1", "--nu1", "0.5", "--out", str(out)]
    serial = tmp_path / "serial.csv"
    assert runner.invoke(spsfeedback, args[:-1] + [str(serial), "--workers", "1"]).exit_code == 0
    result = runner.invoke(spsfeedback, args + ["--workers", workers])
    assert result.exit_code == 0, result.output
    assert out.read_bytes() == serial.read_bytes()


def test_simulate_rk4_converges_in_step(runner):
    def stats(dt):
        result = runner.invoke(
            spsfeedback,
            ["simulate", "--method", "rk4", "--ts", "5", "--samples", "3", "-f", "json", "--dt", dt],
        )
        assert result.exit_code == 0, result.output
        return json.loads(result.output)["result"]

    coarse, fine = stats("0.01"), stats("0.005")
    for key in ("at_switch", "asymptotic"):
        for name in ("p0", "p1", "p2plus"):
            assert coarse[key][name] == pytest.approx(fine[key][name], abs=1e-7)


def test_numeric_failure_exit_code(runner, mocker):
    mocker.patch.object(PropagationClient, "simulate", side_effect=NumericError("eigensolver failed"))
    result = runner.invoke(spsfeedback, ["simulate", "--ts", "1"])
    assert result.exit_code == 3
    assert "eigensolver failed" in result.output


def test_figure_requires_figure_number(runner):
    result = runner.invoke(spsfeedback, ["figure"])
    assert result.exit_code == 2
    assert "Missing option '--figure'" in result.output


def test_figure_rejects_unknown_number(runner):
    result = runner.invoke(spsfeedback, ["figure", "-n", "7"])
    assert result.exit_code == 2


def test_figure3_writes_report(runner, tmp_path, config_file):
    out = tmp_path / "fig3.csv"
    result = runner.invoke(spsfeedback, ["figure", "-c", config_file, "-n", "3", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_text().splitlines()[0] == "T_s,p0,p1,p2plus"
    assert len(out.read_text().splitlines()) == 102
    report = json.loads((tmp_path / "fig3.report.json").read_text())
    assert report["report"]["figure"] == 3
    assert report["report"]["checks"]["p0_starts_at_one"]
