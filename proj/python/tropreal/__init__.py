"""Realizability and counting for tropical curves in real tori."""

import json

from ._core import (
    ConfigError,
    ConstraintError,
    Curve,
    DegenerateOffsetError,
    DomainError,
    Error,
    NotRealizable,
    ParseError,
    load_curve,
    parse_curve,
    plot_svg,
    theta,
)
from . import _core

__all__ = [
    "ConfigError", "ConstraintError", "Curve", "DegenerateOffsetError", "DomainError", "Error",
    "NotRealizable", "ParseError", "count", "load_curve", "parse_curve", "plot_svg", "prelog",
    "realizability", "selftest", "snf_diagonal", "theta",
]


def realizability(curve, mode="", tol=1e-9):
    """Realizability report as a dict; mode defaults to the curve's multipliers."""
    return json.loads(_core._realizability(curve, mode, tol))


def count(curve, mode="", tol=1e-9):
    """Count report for the curve's marked points."""
    return json.loads(_core._count(curve, mode, tol))


def prelog(curve, mode="", tol=1e-9):
    """Gluing data, or the witnesses of infeasibility."""
    return json.loads(_core._prelog(curve, mode, tol))


def snf_diagonal(rows):
    return [int(d) for d in _core._snf_diagonal(rows)]


def selftest(seed=20260101, cases=60):
    return [
        {"suite": n, "passed": p, "checks": c, "detail": d}
        for n, p, c, d in _core._selftest(seed, cases)
    ]
