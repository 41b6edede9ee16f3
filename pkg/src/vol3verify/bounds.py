"""Trace-length and congruence-level systole lower bounds.

This is the presentation layer: plain 64-bit floats with coarse forward
error estimates.  Correctness lives in the exact modules; no float ever
flows back into them.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from .pell import PrimeSelection, select_prime_sequence

_EPS = sys.float_info.epsilon


class HypothesisViolatedError(ValueError):
    """The trace-length bound needs |tr| >= 1."""


@dataclass(frozen=True)
class LengthBound:
    """A nonnegative length lower bound with its inputs echoed."""

    value: float
    abs_err: float
    kind: str
    inputs: dict

    def __float__(self):
        return self.value


def arccosh(x: float) -> float:
    """ln(x + sqrt((x-1)(x+1))), stable for x >= 1; a few ulp of error."""
    if x < 1.0:
        raise ValueError("arccosh needs x >= 1")
    return math.log(x + math.sqrt((x - 1.0) * (x + 1.0)))


def _err(value: float) -> float:
    # crude forward bound: the log/sqrt pipeline stays within a few ulp
    return 8.0 * _EPS * max(1.0, abs(value))


def trace_length_lower_bound(trace_abs, m: int) -> LengthBound:
    """sqrt(2) * arccosh(max(1, |tr|/m)) for a semisimple element of SL(m, R)."""
    trace_abs = float(trace_abs)
    if trace_abs < 1.0:
        raise HypothesisViolatedError(f"|tr| = {trace_abs} < 1")
    if m < 1:
        raise ValueError("m must be positive")
    x = max(1.0, trace_abs / m)
    value = math.sqrt(2.0) * arccosh(x)
    return LengthBound(
        value=value,
        abs_err=_err(value),
        kind="trace-length",
        inputs={"trace_abs": trace_abs, "m": m},
    )


def congruence_systole_lower_bound(p: int, m: int) -> LengthBound:
    """(2 sqrt(2) / m) * arccosh(p/m - 1) once p >= 2m, else 0.

    This is the supremum of the provable bounds over the auxiliary constant
    in the congruence-subgroup argument; it is strictly increasing in p
    beyond 2m and tends to infinity with p.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if p < 3 or p % 2 == 0:
        raise ValueError("the congruence level must be an odd prime")
    x = p / m - 1.0
    if x < 1.0:
        value = 0.0
    else:
        value = (2.0 * math.sqrt(2.0) / m) * arccosh(x)
    return LengthBound(
        value=value,
        abs_err=_err(value),
        kind="congruence-systole",
        inputs={"p": p, "m": m},
    )


@dataclass(frozen=True)
class SystoleRow:
    n: int
    t: int
    y: int
    p: int
    primitive_primes: tuple
    bound: LengthBound


@dataclass(frozen=True)
class SystoleTable:
    d: int
    rule: str
    m: int
    rows: tuple
    skipped: tuple


def systole_report(
    d: int, depth: int, rule: str = "largest-primitive", m: int = 8
) -> SystoleTable:
    """Join the selected prime sequence with the congruence systole bound."""
    selection: PrimeSelection = select_prime_sequence(d, depth, rule)
    rows = tuple(
        SystoleRow(
            n=row.n,
            t=row.t,
            y=row.y,
            p=row.p,
            primitive_primes=row.primitive_primes,
            bound=congruence_systole_lower_bound(row.p, m),
        )
        for row in selection.rows
    )
    return SystoleTable(d=d, rule=rule, m=m, rows=rows, skipped=selection.skipped)
