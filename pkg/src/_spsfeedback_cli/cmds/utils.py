# CLI - specific utils.py file to avoid circular imports
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List

from _spsfeedback_cli import console
from _spsfeedback_cli import render
from _spsfeedback_cli.cmds.models import Command
from _spsfeedback_cli.cmds.models import OutputFormat
from _spsfeedback_cli.cmds.models import RunConfig
from _spsfeedback_cli.file_readers import read_sections
from _spsfeedback_sdk.core.client import Simulator
from _spsfeedback_sdk.optimize.models import OptResult
from _spsfeedback_sdk.optimize.models import SweepPoint
from _spsfeedback_sdk.utils import model_row

RESULT_COLUMNS = list(OptResult.__fields__)
SWEEP_COLUMNS = ["curve", "variable", "value"] + RESULT_COLUMNS


def load_run_config(command: Command, config_file=None, **overrides) -> RunConfig:
    """Read the optional config file and apply command-line overrides."""
    sections = read_sections(config_file) if config_file is not None else {}
    return RunConfig.from_sections(command, sections, **overrides)


def simulator_for(config: RunConfig) -> Simulator:
    return Simulator(**config.simulator_settings())


def result_rows(results: List[OptResult]) -> List[Dict[str, Any]]:
    return [model_row(result) for result in results]


def sweep_rows(points: List[SweepPoint]) -> List[Dict[str, Any]]:
    rows = []
    for point in points:
        row = {"curve": point.curve, "variable": point.variable, "value": model_row(point, ["value"])["value"]}
        row.update(model_row(point.result))
        rows.append(row)
    return rows


def companion(path: Path, suffix: str) -> Path:
    """`run.csv` -> `run<suffix>`: a file written next to the main output."""
    other = path.with_name(path.stem + suffix)
    if other == path:
        other = path.with_name(path.stem + ".summary" + suffix)
    return other


def emit(config: RunConfig, rows: List[Dict[str, Any]], headers: List[str], document: Dict[str, Any]):
    """
    Write tabular `rows` as CSV or the JSON `document`, to `config.out` or stdout.
    """
    if OutputFormat(config.format) == OutputFormat.json:
        if config.out:
            render.write_json_file(config.out, document)
        else:
            render.json_document(document)
    else:
        if config.out:
            render.write_csv_file(config.out, rows, headers)
        else:
            render.csv(rows, headers)
    if config.out:
        console.print(f"Wrote {config.out}", highlight=False)
