"""System description documents and canonical report serialization.

A system description is a JSON object::

    {
      "name": "horn-g3",                  # optional
      "r": 2, "N": 4,
      "A": [[-1, 2], [0, 1], [1, 0], [2, -1]],
      "alpha": ["-1/2", "-1/3"],          # optional for `volume`
      "labels": {"a": "1/2", "b": "1/3"}  # optional, echoed back
    }

Rationals are written as strings ``"p/q"`` (or ``"p"``); JSON integers are
accepted too.  Floats are rejected everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Optional

from .asystem import AConfiguration, ParameterVector, build_configuration
from .errors import ParseError


def format_rational(x) -> str:
    return str(Fraction(x))


def parse_rational(text, location: str = "") -> Fraction:
    if isinstance(text, bool) or isinstance(text, float):
        raise ParseError(f"expected a rational string, got {text!r}", location)
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}", location)
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"malformed rational {text!r}", location) from None
    if d == 0:
        raise ParseError(f"zero denominator in {text!r}", location)
    return Fraction(n, d)


def format_vector(v) -> list:
    return [format_rational(x) for x in v]


def parse_vector(items, location: str = "") -> tuple:
    if not isinstance(items, list):
        raise ParseError("expected a list", location)
    return tuple(parse_rational(x, f"{location}[{i}]") for i, x in enumerate(items))


@dataclass(frozen=True)
class SystemDescription:
    name: str
    cfg: AConfiguration
    alpha: Optional[ParameterVector]
    labels: dict

    def require_alpha(self) -> ParameterVector:
        if self.alpha is None:
            raise ParseError("this command needs 'alpha'", self.name)
        return self.alpha


def _int(x, location) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"expected an integer, got {x!r}", location)
    return x


def parse_system(doc: Any, source: str = "<input>") -> SystemDescription:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", source)
    for key in ("r", "N", "A"):
        if key not in doc:
            raise ParseError(f"missing field '{key}'", source)
    r = _int(doc["r"], f"{source}: r")
    n = _int(doc["N"], f"{source}: N")
    rows = doc["A"]
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"'A' must list exactly N={n} vectors", f"{source}: A")
    A = []
    for i, row in enumerate(rows):
        loc = f"{source}: A[{i}]"
        if not isinstance(row, list) or len(row) != r:
            raise ParseError(f"expected {r} integers", loc)
        A.append(tuple(_int(x, f"{loc}[{j}]") for j, x in enumerate(row)))
    alpha = None
    if doc.get("alpha") is not None:
        vals = parse_vector(doc["alpha"], f"{source}: alpha")
        if len(vals) != r:
            raise ParseError(f"expected {r} coordinates", f"{source}: alpha")
        alpha = ParameterVector(vals)
    labels = doc.get("labels") or {}
    if not isinstance(labels, dict):
        raise ParseError("'labels' must be an object", f"{source}: labels")
    cfg = build_configuration(A)
    return SystemDescription(str(doc.get("name", source)), cfg, alpha, labels)


def load_system(path) -> SystemDescription:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno})", str(path)) from None
    return parse_system(doc, str(path))


def bundled_system(name: str) -> SystemDescription:
    """One of the shipped example systems: ``gauss``, ``appell-f2``, ``horn-g3``."""
    text = resources.files("gkzalg").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    return parse_system(json.loads(text), name)


def dumps(report: dict) -> str:
    """Canonical machine output: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
