"""Schemas for command reports and their canonical serialization."""

import dataclasses
import json
from collections.abc import Mapping
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from app.models.poly import MultiPoly
from app.models.rings import CoefficientRing, ModRingElement, TruncatedPoly
from app.models.series import TruncatedLaurentSeries
from app.models.witt import WittVector

SCHEMA_TAG = "witt-residue/1"


class ReportError(BaseModel):
    """One error raised while running a command."""

    type: str = Field(..., description="Exception class name")
    message: str
    details: dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    """Everything a command prints, in a form that serializes canonically."""

    model_config = ConfigDict(populate_by_name=True)

    schema_tag: str = Field(default=SCHEMA_TAG, alias="schema")
    command: list[str] = Field(default_factory=list, description="argv echo")
    config: dict[str, Any] = Field(default_factory=dict)
    results: dict[str, Any] = Field(default_factory=dict)
    errors: list[ReportError] = Field(default_factory=list)
    exit_code: int = 0


def encode(value: Any) -> Any:
    """Turn library values into JSON data with exact rationals and modular values."""
    if value is None or isinstance(value, bool | str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, ModRingElement):
        return {"mod": value.modulus, "value": value.value}
    if isinstance(value, TruncatedPoly):
        return [encode(c) for c in value.coefficients]
    if isinstance(value, TruncatedLaurentSeries):
        return {
            "low": value.low,
            "order": value.order,
            "coefficients": [encode(c) for c in value.coefficients],
        }
    if isinstance(value, MultiPoly):
        return value.to_text()
    if isinstance(value, WittVector):
        return {
            "p": value.p,
            "base": value.base.tag(),
            "components": [encode(c) for c in value.components],
        }
    if isinstance(value, CoefficientRing):
        return value.tag()
    if isinstance(value, Mapping):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [encode(v) for v in value]
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: encode(getattr(value, f.name)) for f in dataclasses.fields(value)}
    raise TypeError(f"Cannot encode {type(value).__name__} in a report")


def to_json(report: Report) -> str:
    """Byte-stable JSON: sorted keys, fixed separators, trailing newline."""
    data = report.model_dump(by_alias=True)
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _series_text(value: Mapping[str, Any]) -> str:
    terms = []
    for k, c in enumerate(value["coefficients"], start=value["low"]):
        text = _scalar_text(c)
        if text in ("0", "[]"):
            continue
        if k == 0:
            terms.append(text)
        else:
            power = "t" if k == 1 else f"t^{k}"
            terms.append(f"{text}*{power}" if text != "1" else power)
    terms.append(f"O(t^{value['order']})")
    return " + ".join(terms)


def _scalar_text(value: Any) -> str:
    if isinstance(value, Mapping) and {"mod", "value"} <= value.keys():
        return str(value["value"])
    if isinstance(value, Mapping) and "coefficients" in value:
        return _series_text(value)
    if isinstance(value, list) and all(not isinstance(v, list | Mapping) for v in value):
        nonzero = [(k, _scalar_text(c)) for k, c in enumerate(value) if c not in (0, "0")]
        if not nonzero:
            return "0"
        return " + ".join(c if k == 0 else f"({c})*s^{k}" for k, c in nonzero)
    return str(value)


def _is_matrix(value: Any) -> bool:
    return (
        isinstance(value, list)
        and bool(value)
        and all(isinstance(row, list) and len(row) == len(value) for row in value)
    )


def _table(rows: list[list[Any]]) -> list[str]:
    cells = [[_scalar_text(c) for c in row] for row in rows]
    widths = [max(len(row[j]) for row in cells) for j in range(len(cells[0]))]
    return ["  " + "  ".join(c.ljust(w) for c, w in zip(row, widths, strict=True)) for row in cells]


def _text_lines(key: str, value: Any, indent: str = "") -> list[str]:
    if _is_matrix(value):
        return [f"{indent}{key}:", *(indent + line for line in _table(value))]
    if isinstance(value, Mapping) and not ({"mod", "value"} <= value.keys() or "coefficients" in value):
        lines = [f"{indent}{key}:"]
        for k in sorted(value):
            lines.extend(_text_lines(k, value[k], indent + "  "))
        return lines
    if isinstance(value, list) and any(isinstance(v, Mapping) and "coefficients" not in v for v in value):
        lines = [f"{indent}{key}:"]
        for i, item in enumerate(value):
            lines.extend(_text_lines(f"[{i}]", item, indent + "  "))
        return lines
    if isinstance(value, list):
        return [f"{indent}{key}: {', '.join(_scalar_text(v) for v in value)}"]
    return [f"{indent}{key}: {_scalar_text(value)}"]


def to_text(report: Report) -> str:
    """Human-readable rendering; matrices become aligned tables with t-powers."""
    data = report.model_dump(by_alias=True)
    lines = [f"{data['schema']}  {' '.join(data['command'])}"]
    for section in ("config", "results"):
        if data[section]:
            lines.extend(_text_lines(section, data[section]))
    for error in data["errors"]:
        lines.append(f"error: {error['type']}: {error['message']}")
    lines.append(f"exit code: {data['exit_code']}")
    return "\n".join(lines) + "\n"
