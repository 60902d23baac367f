"""Deterministic report rendering: exact values as num/den strings, floats
only for human-facing aggregates.  Identical inputs must render to
identical bytes, so everything is sorted and nothing carries timestamps."""

from __future__ import annotations

import json
from fractions import Fraction

from .graphs import GraphError


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Accept "3/8", "0.375" or "3"."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        if "." in text:
            return Fraction(text)
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise GraphError(f"cannot parse fraction {text!r}") from None


def jsonable(value):
    """Recursively rewrite report values into JSON-safe primitives."""
    if isinstance(value, Fraction):
        return frac_str(value)
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {_key(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else list(value)
        return [jsonable(v) for v in items]
    return value


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def render_json(report: dict) -> str:
    return json.dumps(jsonable(report), indent=2, sort_keys=True) + "\n"


def render_text(report: dict) -> str:
    lines: list[str] = []
    _render_lines(jsonable(report), "", lines)
    return "\n".join(lines) + "\n"


def _render_lines(value, prefix: str, lines: list[str]) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            label = f"{prefix}{k}"
            if isinstance(v, (dict, list)):
                lines.append(f"{label}:")
                _render_lines(v, prefix + "  ", lines)
            else:
                lines.append(f"{label}: {v}")
    elif isinstance(value, list):
        for i, v in enumerate(value):
            label = f"{prefix}- [{i}]"
            if isinstance(v, (dict, list)):
                lines.append(label)
                _render_lines(v, prefix + "  ", lines)
            else:
                lines.append(f"{label} {v}")
    else:
        lines.append(f"{prefix}{value}")
