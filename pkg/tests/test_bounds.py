import math

import mpmath
import pytest

from vol3verify.bounds import (
    HypothesisViolatedError,
    arccosh,
    congruence_systole_lower_bound,
    systole_report,
    trace_length_lower_bound,
)

mpmath.mp.dps = 100

# frozen 100-digit reference evaluations (25 significant digits shown)
SQRT2_ACOSH_2 = "1.862459718905424354524677"
BOUND_97_8 = "1.096127203212397550607171"
BOUND_1103_8 = "1.984213023410224554769458"


def ref_trace(trace_abs, m):
    x = mpmath.mpf(max(1, mpmath.mpf(trace_abs) / m))
    return mpmath.sqrt(2) * mpmath.acosh(x)


def ref_congruence(p, m):
    x = mpmath.mpf(p) / m - 1
    if x < 1:
        return mpmath.mpf(0)
    return (2 * mpmath.sqrt(2) / m) * mpmath.acosh(x)


def test_arccosh_against_reference():
    for x in (1, 2, 11.125, 137.875, 1e6, 1.25e8):
        got = arccosh(float(x))
        want = mpmath.acosh(mpmath.mpf(x))
        assert abs(got - float(want)) <= 1e-12 * max(1.0, abs(float(want)))
    with pytest.raises(ValueError):
        arccosh(0.5)


def test_trace_length_bound():
    b = trace_length_lower_bound(8, 8)
    assert b.value == 0.0
    b = trace_length_lower_bound(16, 8)
    assert abs(b.value - float(mpmath.mpf(SQRT2_ACOSH_2))) < 1e-9
    assert abs(b.value - float(ref_trace(16, 8))) < 1e-9
    assert b.abs_err < 1e-12
    with pytest.raises(HypothesisViolatedError):
        trace_length_lower_bound(0.5, 8)


def test_trace_length_monotone():
    values = [trace_length_lower_bound(x, 8).value for x in (8, 9, 12, 16, 100)]
    assert values == sorted(values)


def test_congruence_bound_values():
    b = congruence_systole_lower_bound(97, 8)
    assert abs(b.value - float(mpmath.mpf(BOUND_97_8))) < 1e-6
    b = congruence_systole_lower_bound(1103, 8)
    assert abs(b.value - float(mpmath.mpf(BOUND_1103_8))) < 1e-6
    assert congruence_systole_lower_bound(13, 8).value == 0.0
    assert congruence_systole_lower_bound(1103, 8).value > congruence_systole_lower_bound(107, 8).value


def test_congruence_bound_monotone_and_diverging():
    probes = [10**3 + 9, 10**6 + 3, 10**9 + 9]  # odd values at three scales
    values = [congruence_systole_lower_bound(p, 8).value for p in probes]
    assert values[0] < values[1] < values[2]
    # the bound eventually exceeds any fixed threshold; k = 10 needs p ~ 1e13
    big = congruence_systole_lower_bound(7_700_000_000_061, 8)
    assert big.value > 10.0


def test_congruence_bound_validation():
    with pytest.raises(ValueError):
        congruence_systole_lower_bound(4, 8)  # even
    with pytest.raises(ValueError):
        congruence_systole_lower_bound(97, 1)


def test_systole_report_d3():
    table = systole_report(3, 5)
    assert [r.p for r in table.rows] == [7, 13, 97, 181]
    grown = [r for r in table.rows if r.p > 16]
    values = [r.bound.value for r in grown]
    assert values == sorted(values) and len(set(values)) == len(values)
    for r in table.rows:
        assert (r.bound.value == 0.0) == (r.p < 16)


def test_systole_report_d5_golden():
    table = systole_report(5, 5, rule="golden-table")
    assert [r.p for r in table.rows] == [3, 7, 107, 1103, 2521]
    values = [r.bound.value for r in table.rows]
    # increasing from the first p above 2m on
    assert values[2] < values[3] < values[4]


def test_systole_report_empty():
    table = systole_report(3, 0)
    assert table.rows == ()
