"""Reading and writing signomials, simplices and certificates."""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .signomial import Signomial

__all__ = [
    "CERTIFICATE_SCHEMA",
    "ParseError",
    "dumps_json",
    "dumps_text",
    "load_signomial",
    "load_simplex",
    "parse_json",
    "parse_text",
    "validate_certificate",
]


class ParseError(ValueError):
    """Malformed input; the message carries the location."""


def parse_text(text: str, source: str = "<input>") -> Signomial:
    """One term per line: ``coefficient e1 ... en``; ``#`` starts a comment."""
    coeffs: list[float] = []
    exps: list[list[float]] = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            nums = [float(tok) for tok in line.split()]
        except ValueError as exc:
            raise ParseError(f"{source}:{lineno}: not a number ({exc})") from None
        if len(nums) < 2:
            raise ParseError(f"{source}:{lineno}: expected a coefficient and at least one exponent")
        if nums[0] == 0.0:
            raise ParseError(f"{source}:{lineno}: zero coefficient")
        if n is None:
            n = len(nums) - 1
        elif len(nums) - 1 != n:
            raise ParseError(f"{source}:{lineno}: expected {n} exponents, got {len(nums) - 1}")
        coeffs.append(nums[0])
        exps.append(nums[1:])
    if n is None:
        raise ParseError(f"{source}: no terms")
    try:
        return Signomial(coeffs, exps, n)
    except ValueError as exc:
        raise ParseError(f"{source}: {exc}") from None


def parse_json(text: str, source: str = "<input>") -> Signomial:
    """``{"n": 2, "terms": [{"c": -1.0, "mu": [4, 5]}, ...]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}: {exc.msg}") from None
    try:
        jsonschema.validate(data, _SIGNOMIAL_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "top level"
        raise ParseError(f"{source}: {where}: {exc.message}") from None
    n = data["n"]
    for i, term in enumerate(data["terms"]):
        if term["c"] == 0:
            raise ParseError(f"{source}: terms/{i}: zero coefficient")
        if len(term["mu"]) != n:
            raise ParseError(f"{source}: terms/{i}: expected {n} exponents, got {len(term['mu'])}")
    if not data["terms"]:
        raise ParseError(f"{source}: no terms")
    return Signomial([t["c"] for t in data["terms"]], [t["mu"] for t in data["terms"]], n)


def dumps_text(f: Signomial) -> str:
    return "".join(" ".join(repr(float(x)) for x in (c, *mu)) + "\n" for c, mu in f.terms)


def dumps_json(f: Signomial) -> str:
    terms = [{"c": c, "mu": list(mu)} for c, mu in f.terms]
    return json.dumps({"n": f.n, "terms": terms}, indent=2)


def load_signomial(path) -> Signomial:
    """Read a ``.json`` file as structured input, anything else as text."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return parse_json(text, str(path))
    return parse_text(text, str(path))


def load_simplex(path) -> list[list[float]]:
    """A simplex file is a JSON list of vertices or ``{"vertices": [...]}``."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}: {exc.msg}") from None
    if isinstance(data, dict):
        data = data.get("vertices")
    try:
        jsonschema.validate(data, _VERTICES_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ParseError(f"{path}: {exc.message}") from None
    return data


def validate_certificate(d: dict) -> None:
    jsonschema.validate(d, CERTIFICATE_SCHEMA)


_NUMBER_LIST = {"type": "array", "items": {"type": "number"}, "minItems": 1}

_SIGNOMIAL_SCHEMA = {
    "type": "object",
    "required": ["n", "terms"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["c", "mu"],
                "properties": {"c": {"type": "number"}, "mu": _NUMBER_LIST},
            },
        },
    },
}

_VERTICES_SCHEMA = {"type": "array", "items": _NUMBER_LIST, "minItems": 2}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["target", "bound", "rule", "witness", "diagnostics"],
    "additionalProperties": False,
    "properties": {
        "target": {"enum": ["negative", "positive"]},
        "bound": {
            "oneOf": [
                {"type": "integer", "minimum": 0},
                {"const": "unknown", "description": "no rule applied; says nothing about the true count"},
            ]
        },
        "rule": {
            "enum": [
                "no_negative_points",
                "single_negative_point",
                "strict_separating",
                "convexification",
                "positive_hyperplane",
                "few_positive_points",
                "strict_enclosing",
                "descartes_univariate",
                "none",
            ]
        },
        "witness": {"oneOf": [{"type": "null"}, {"type": "object", "required": ["type"]}]},
        "diagnostics": {"type": "array", "items": {"type": "string"}},
    },
}
