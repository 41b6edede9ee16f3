"""Dense univariate polynomials over Z, stored as ascending coefficient tuples.

The zero polynomial is the empty tuple.  These are the workhorses behind
rational-function arithmetic, so the hot paths (mul, gcd, exact division)
stay in plain integer arithmetic throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

Poly = tuple

ZERO: Poly = ()
ONE: Poly = (1,)
T: Poly = (0, 1)


def trim(coeffs) -> Poly:
    """Drop trailing zero coefficients."""
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def const(k: int) -> Poly:
    return (k,) if k else ZERO


def degree(f: Poly) -> int:
    """Degree, with the convention deg 0 = -1."""
    return len(f) - 1


def add(f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] += c
    return trim(out)


def neg(f: Poly) -> Poly:
    return tuple(-c for c in f)


def sub(f: Poly, g: Poly) -> Poly:
    out = list(f) + [0] * (len(g) - len(f) if len(g) > len(f) else 0)
    for i, c in enumerate(g):
        out[i] -= c
    return trim(out)


def mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ZERO
    if len(f) == 1:
        k = f[0]
        return g if k == 1 else tuple(k * c for c in g)
    if len(g) == 1:
        k = g[0]
        return f if k == 1 else tuple(k * c for c in f)
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return tuple(out)


def scale(f: Poly, k: int) -> Poly:
    if k == 0:
        return ZERO
    if k == 1:
        return f
    return tuple(k * c for c in f)


def eval_at(f: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def content(f: Poly) -> int:
    c = 0
    for a in f:
        c = gcd(c, a)
        if c == 1:
            return 1
    return c


def primitive(f: Poly) -> tuple[int, Poly]:
    """Split f = c * p with p primitive and lc(p) > 0; the sign rides on c."""
    if not f:
        return 0, ZERO
    c = content(f)
    if f[-1] < 0:
        c = -c
    if c == 1:
        return 1, f
    return c, tuple(a // c for a in f)


def div_exact(f: Poly, g: Poly) -> Poly:
    """Quotient f/g when g divides f with integer quotient coefficients."""
    if not f:
        return ZERO
    if len(g) == 1:
        k = g[0]
        if k == 1:
            return f
        q = []
        for c in f:
            qc, rem = divmod(c, k)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q.append(qc)
        return tuple(q)
    dg = len(g) - 1
    lg = g[-1]
    nq = len(f) - len(g) + 1
    if nq <= 0:
        raise ArithmeticError("inexact polynomial division")
    r = list(f)
    q = [0] * nq
    for k in range(nq - 1, -1, -1):
        c = r[dg + k]
        if c:
            qc, rem = divmod(c, lg)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[k] = qc
            for i, gc in enumerate(g):
                r[i + k] -= qc * gc
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return trim(q)


def pseudo_rem(f: Poly, g: Poly) -> Poly:
    """Remainder of f by g after scaling by powers of lc(g); used inside gcd."""
    dg = len(g) - 1
    lg = g[-1]
    r = list(f)
    while True:
        while r and r[-1] == 0:
            r.pop()
        dr = len(r) - 1
        if dr < dg:
            return tuple(r)
        top = r[-1]
        r = [lg * c for c in r]
        shift = dr - dg
        for i, gc in enumerate(g):
            r[i + shift] -= top * gc


def gcd_primitive(f: Poly, g: Poly) -> Poly:
    """Gcd of polynomials up to rational units: primitive with lc > 0.

    Nonzero constants are units over Q, so any constant input gives 1.
    Uses the primitive polynomial remainder sequence.
    """
    if not f:
        return primitive(g)[1] if g else ZERO
    if not g:
        return primitive(f)[1]
    if len(f) == 1 or len(g) == 1:
        return ONE
    _, f = primitive(f)
    _, g = primitive(g)
    while True:
        if len(f) < len(g):
            f, g = g, f
        r = pseudo_rem(f, g)
        if not r:
            return g
        if len(r) == 1:
            return ONE
        _, r = primitive(r)
        f, g = g, r


def derivative(f: Poly) -> Poly:
    return trim([i * f[i] for i in range(1, len(f))])


def sqrt_exact(f: Poly):
    """Integer-coefficient square root of a primitive f, or None.

    Returns the root with positive leading coefficient.
    """
    if not f:
        return ZERO
    df = len(f) - 1
    if df % 2:
        return None
    if f[-1] < 0:
        return None
    lead = isqrt(f[-1])
    if lead * lead != f[-1]:
        return None
    m = df // 2
    g = [Fraction(0)] * (m + 1)
    g[m] = Fraction(lead)
    for k in range(m - 1, -1, -1):
        # match the coefficient of t^(m+k) in g^2
        acc = Fraction(0)
        for i in range(k + 1, m):
            j = m + k - i
            if 0 <= j <= m and j > k:
                acc += g[i] * g[j]
        g[k] = (Fraction(f[m + k]) - acc) / (2 * g[m])
    if any(c.denominator != 1 for c in g):
        return None
    root = trim([int(c) for c in g])
    if mul(root, root) != f:
        return None
    return root


_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def to_str(f: Poly, var: str = "t") -> str:
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        if i == 0:
            term = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            term = f"{mag}{var}" + (f"^{i}" if i > 1 else "")
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append(("- " if c < 0 else "+ ") + term)
    return " ".join(parts)
