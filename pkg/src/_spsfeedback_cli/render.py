import json
import math
import sys
from csv import DictWriter
from enum import Enum
from pathlib import Path
from typing import Any
from typing import Dict
from typing import IO
from typing import Iterable
from typing import List

import numpy as np
from pydantic import BaseModel
from rich.table import Table

from _spsfeedback_cli import console
from _spsfeedback_sdk.__version__ import __version__
from _spsfeedback_sdk.utils import FLOAT_FORMAT


def csv(rows: Iterable[Dict[str, Any]], headers: List[str], file: IO[str] = None):
    """Write already-formatted rows as CSV with a header row and LF line endings."""
    file = file or sys.stdout
    writer = DictWriter(file, fieldnames=headers, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def jsonable(value: Any) -> Any:
    """
    Convert models, arrays and numpy scalars to plain JSON types.

    Floats keep 9 significant digits; non-finite floats become the strings "inf", "-inf" and "nan".
    """
    if isinstance(value, BaseModel):
        return jsonable(value.dict())
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value) or math.isnan(value):
            return str(value)
        return float(FLOAT_FORMAT % value)
    if isinstance(value, complex):
        return {"real": jsonable(value.real), "imag": jsonable(value.imag)}
    return value


def summary(**sections) -> Dict[str, Any]:
    """JSON summary document: the given sections plus the package version."""
    document = {name: jsonable(value) for name, value in sections.items()}
    document["version"] = __version__
    return document


def json_document(document: Dict[str, Any], file: IO[str] = None):
    file = file or sys.stdout
    file.write(json.dumps(document, indent=2, ensure_ascii=False))
    file.write("\n")


def write_csv_file(path: Path, rows, headers):
    with open(path, "w", encoding="utf-8", newline="") as file:
        csv(rows, headers, file)


def write_json_file(path: Path, document):
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        json_document(document, file)


def table(rows: Iterable[Dict[str, Any]], headers: List[str], title=None):
    """Print formatted rows as a rich table on the diagnostics console."""
    tbl = Table(*headers, title=title, show_lines=False)
    for row in rows:
        tbl.add_row(*(str(row.get(header, "")) for header in headers))
    if not tbl.rows:
        console.print("No results found.")
        return
    console.print(tbl)
