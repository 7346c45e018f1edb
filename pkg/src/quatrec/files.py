"""JSON algebra files.

    {"base": "Q" | "Z" | {"Fp": p}, "dim": n,
     "unit": [n scalar strings],
     "table": n x n array of [n scalar strings],
     "names": [n strings]            (optional)}
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import Algebra, validate
from .exact_math import BaseRing, format_scalar, parse_scalar
from .witnesses import AssociativityFailure, UnitFailure

__all__ = ["AlgebraFileError", "algebra_to_json", "algebra_from_json", "load_algebra", "save_algebra"]


class AlgebraFileError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def algebra_to_json(A: Algebra) -> dict:
    return {
        "base": A.base.descriptor(),
        "dim": A.dim,
        "unit": [format_scalar(c) for c in A.unit],
        "table": [[[format_scalar(c) for c in e] for e in row] for row in A.table],
        "names": list(A.names),
    }


def _scalar(text, base: BaseRing, where: str):
    if not isinstance(text, str):
        raise AlgebraFileError(f"{where}: scalars must be strings, got {text!r}")
    try:
        return parse_scalar(text, base)
    except ValueError as err:
        raise AlgebraFileError(f"{where}: {err}") from None


def algebra_from_json(data) -> Algebra:
    if not isinstance(data, dict):
        raise AlgebraFileError("top level must be an object")
    for key in ("base", "dim", "unit", "table"):
        if key not in data:
            raise AlgebraFileError(f"missing field {key!r}")
    try:
        base = BaseRing.from_descriptor(data["base"])
    except ValueError as err:
        raise AlgebraFileError(f"base: {err}") from None
    n = data["dim"]
    if not isinstance(n, int) or n < 1:
        raise AlgebraFileError(f"dim: expected a positive integer, got {n!r}")
    unit, table = data["unit"], data["table"]
    if not isinstance(unit, list) or len(unit) != n:
        raise AlgebraFileError(f"unit: expected {n} scalars")
    if not isinstance(table, list) or len(table) != n:
        raise AlgebraFileError(f"table: expected {n} rows")
    rows = []
    for s, row in enumerate(table):
        if not isinstance(row, list) or len(row) != n:
            raise AlgebraFileError(f"table[{s}]: expected {n} entries")
        entries = []
        for t, entry in enumerate(row):
            if not isinstance(entry, list) or len(entry) != n:
                raise AlgebraFileError(f"table[{s}][{t}]: expected {n} scalars")
            entries.append([_scalar(v, base, f"table[{s}][{t}][{u}]") for u, v in enumerate(entry)])
        rows.append(entries)
    unit = [_scalar(v, base, f"unit[{u}]") for u, v in enumerate(unit)]
    names = data.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != n):
        raise AlgebraFileError(f"names: expected {n} strings")
    return Algebra(base, rows, unit, names)


def load_algebra(path) -> Algebra:
    """Read and validate an algebra file; a failed validation aborts with its witness."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise AlgebraFileError(f"{path}: line {err.lineno}, column {err.colno}: {err.msg}") from None
    A = algebra_from_json(data)
    report = validate(A)
    if not report.associative:
        raise AlgebraFileError(
            f"{path}: not associative at basis triple {report.associativity_witness}",
            AssociativityFailure(*report.associativity_witness),
        )
    if not report.unital:
        raise AlgebraFileError(f"{path}: unit law fails at e{report.unit_witness}", UnitFailure(report.unit_witness))
    return A


def save_algebra(A: Algebra, path) -> None:
    Path(path).write_text(json.dumps(algebra_to_json(A), indent=2) + "\n")
