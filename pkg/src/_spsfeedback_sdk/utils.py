from __future__ import annotations

import math
from enum import Enum
from typing import Any
from typing import Dict
from typing import Generator
from typing import Iterable
from typing import List
from typing import Type

import numpy as np
from pydantic import BaseModel
from pydantic.fields import SHAPE_SINGLETON

FLOAT_FORMAT = "%.9g"


def format_value(value: Any) -> Any:
    """
    Render a scalar for tabular output: floats with 9 significant digits, enums by value, `None` as an empty cell.

    `inf` and `nan` are written the way Python spells them so the column stays machine-readable.
    """
    if value is None:
        return ""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value) or math.isnan(value):
            return str(value)
        return FLOAT_FORMAT % value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return value


def flatten_fields(model: Type[BaseModel]) -> Generator[str, None, None]:
    """
    Yields all fields of a model and any sub-models as flat, dot-notation strings.

    For example, given the following model hierarchy:

        class Child(BaseModel):
            field_1: str
            field_2: int

        class Parent(BaseModel):
            field: str
            child: Child

    flatten_fields(Parent) would yield: ['field', 'child.field_1', 'child.field_2']
    """
    for name, field in model.__fields__.items():
        # only singleton sub-models can be flattened into columns
        if isinstance(field.type_, type) and issubclass(field.type_, BaseModel) and field.shape == SHAPE_SINGLETON:
            for child_name in flatten_fields(field.type_):
                yield f"{name}.{child_name}"
        else:
            yield name


def get_fields(
    model: Type[BaseModel], include: List[str] = None, flat: bool = False
) -> Generator[str, None, None]:
    """
    Yields fields from a model, flattening nested models when `flat=True`.

    Order follows `include` when it is given, so callers control column order.
    """
    fields = list(flatten_fields(model)) if flat else list(model.__fields__)
    if not include:
        yield from fields
        return
    for name in include:
        if name in fields:
            yield name


def get_field_value(model: BaseModel, path: List[str]) -> Any:
    """Traverse a pydantic model and its sub-models along a dot-notation path; missing sub-models give `None`."""
    for p in path[:-1]:
        model = getattr(model, p)
        if model is None:
            return None
    return getattr(model, path[-1])


def model_row(model: BaseModel, include: List[str] = None, flat: bool = True) -> Dict[str, Any]:
    """One formatted output row for `model`, keyed by (flattened) field name."""
    return {
        name: format_value(get_field_value(model, name.split(".")))
        for name in get_fields(model.__class__, include=include, flat=flat)
    }


def dict_rows(rows: Iterable[Dict[str, Any]]) -> List[Dict[str, Any]]:
    """Format every value of plain dict rows."""
    return [{key: format_value(value) for key, value in row.items()} for row in rows]
