"""Constrained Nevanlinna-Pick families for cusp algebras.

Thin wrapper over the compiled core. Specs, units, problems and instances
use the same JSON shapes as the ``pickfam`` command line tool and may be
passed as dicts or JSON strings.
"""

from __future__ import annotations

import json
from typing import Any, Sequence

from . import _pickfam
from ._pickfam import PickfamError

__all__ = [
    "PickfamError",
    "conductor",
    "picard",
    "kernel",
    "solve",
    "oracle",
    "verify",
    "run_cli",
]


def _text(value: Any) -> str:
    if value is None:
        return ""
    return value if isinstance(value, str) else json.dumps(value)


def conductor(spec: Any) -> dict:
    """Quotient data of a spec; includes the conductor exponent for semigroups."""
    return json.loads(_pickfam.conductor(_text(spec)))


def picard(spec: Any, unit: Any) -> list:
    """Orbit coordinates of a unit as [re, im] pairs of exact rationals."""
    return json.loads(_pickfam.picard(_text(spec), _text(unit)))


def kernel(spec: Any, z: Sequence[complex], w: Sequence[complex], unit: Any = None) -> list:
    """K(z, w) for the cyclic module generated by `unit` (default 1)."""
    return _pickfam.kernel(_text(spec), _text(unit), list(z), list(w))


def solve(problem: Any) -> dict:
    """Sweep the kernel family for a Pick problem and return the verdict."""
    return json.loads(_pickfam.solve(_text(problem)))


def oracle(instance: Any) -> dict:
    """Minimal sup-norm interpolation for a one-variable instance."""
    return json.loads(_pickfam.oracle(_text(instance)))


def verify(degree: int = 12, seed: int = 0) -> list:
    """Run the exact identity suites."""
    return json.loads(_pickfam.verify(degree, seed))


def run_cli(args: Sequence[str]) -> tuple[int, str, str]:
    """Run the command line tool in-process; returns (exit code, stdout, stderr)."""
    return _pickfam.run_cli(list(args))
