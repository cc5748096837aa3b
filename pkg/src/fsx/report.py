"""Structured verification reports with canonical, diff-friendly serialization.

Floats are always rendered as %.12e and keys are sorted, so two runs with the
same seed produce byte-identical files except for the wall_time field.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field as dc_field

from .errors import IoError

SCHEMA_VERSION = "1"


@dataclass
class Report:
    suite: str
    params: dict
    cases: list[dict] = dc_field(default_factory=list)
    constants: dict = dc_field(default_factory=dict)
    verifies: list[str] = dc_field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(bool(c.get("passed", False)) for c in self.cases)

    def add_case(self, case_id: str, value: float, bound: float, passed: bool,
                 digest: str = "") -> None:
        self.cases.append(
            {
                "case": case_id,
                "digest": digest,
                "value": value,
                "bound": bound,
                "passed": bool(passed),
            }
        )

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "params": self.params,
            "cases": self.cases,
            "constants": self.constants,
            "verifies": self.verifies,
            "passed": self.passed,
            "wall_time": self.wall_time,
        }


def _canon(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, float):
        if math.isnan(value):
            return '"nan"'
        if math.isinf(value):
            return '"inf"' if value > 0 else '"-inf"'
        return f"{value:.12e}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_canon(v) for v in value) + "]"
    if isinstance(value, dict):
        items = sorted(value.items(), key=lambda kv: str(kv[0]))
        return "{" + ",".join(f'{_canon(str(k))}:{_canon(v)}' for k, v in items) + "}"
    raise IoError(f"cannot serialize {type(value).__name__}")


def canonical_json(data: dict) -> str:
    return _canon(data)


def report_digest(r: Report) -> str:
    """Content digest with the timing field masked out."""
    data = r.to_dict()
    data["wall_time"] = 0.0
    return hashlib.sha256(canonical_json(data).encode()).hexdigest()


def write_report(r: Report, path: str) -> None:
    try:
        with open(path, "w") as fh:
            fh.write(canonical_json(r.to_dict()))
            fh.write("\n")
    except OSError as exc:
        raise IoError(str(exc)) from exc


def read_report(path: str) -> dict:
    import json

    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise IoError(str(exc)) from exc
