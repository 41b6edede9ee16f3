"""Exact arithmetic in Q(t) and the radical tower Q(t)[s, w].

s and w are formal square roots with s^2 = t^2 - 1 and w^2 = t^2 + 2.
The same tower element type also serves numeric fibers (e.g. t = 2 with
s^2 = 3, w^2 = 6) by swapping the base from RatFunc to Fraction.

Rational functions keep integer-coefficient primitive numerator and
denominator plus a rational content factor, so gcd work stays in integer
arithmetic and representations are unique.
"""

from __future__ import annotations

from fractions import Fraction

from . import polys
from .polys import Poly
from .quadratic import QuadElem, require_valid_d


class PoleAtSpecializationError(ZeroDivisionError):
    """A denominator vanishes at the requested parameter value."""


class MissingRadicalValueError(ValueError):
    """The element involves w but the specialization provides no value for it."""


class RatFunc:
    """Rational function c * num/den in Q(t).

    num and den are primitive integer polynomials with positive leading
    coefficient, gcd(num, den) = 1, and c carries all rational content.
    Equal values always have identical representations.
    """

    __slots__ = ("c", "num", "den")

    def __init__(self, c: Fraction, num: Poly, den: Poly):
        # trusted raw constructor; use of() / from_polys() to normalize
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def from_polys(cls, num: Poly, den: Poly, extra: Fraction = Fraction(1)) -> "RatFunc":
        """Normalize extra * num/den into canonical form."""
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num or not extra:
            return RF_ZERO
        cn, pn = polys.primitive(num)
        cd, pd = polys.primitive(den)
        g = polys.gcd_primitive(pn, pd)
        if len(g) > 1:
            pn = polys.div_exact(pn, g)
            pd = polys.div_exact(pd, g)
        return cls(extra * Fraction(cn, cd), pn, pd)

    @classmethod
    def of(cls, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value), polys.ONE, polys.ONE) if value else RF_ZERO
        if isinstance(value, tuple):
            return cls.from_polys(value, polys.ONE)
        raise TypeError(f"cannot make a RatFunc from {value!r}")

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.of(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.c:
            return o
        if not o.c:
            return self
        if self.den == o.den:
            n1, n2 = self.c, o.c
            num = polys.add(
                polys.scale(self.num, n1.numerator * n2.denominator),
                polys.scale(o.num, n2.numerator * n1.denominator),
            )
            return RatFunc.from_polys(
                num, self.den, Fraction(1, n1.denominator * n2.denominator)
            )
        num = polys.add(
            polys.scale(
                polys.mul(self.num, o.den), self.c.numerator * o.c.denominator
            ),
            polys.scale(polys.mul(o.num, self.den), o.c.numerator * self.c.denominator),
        )
        den = polys.mul(self.den, o.den)
        return RatFunc.from_polys(
            num, den, Fraction(1, self.c.denominator * o.c.denominator)
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RatFunc(-self.c, self.num, self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.c or not o.c:
            return RF_ZERO
        # cross-cancellation: the factors below are already coprime
        g1 = polys.gcd_primitive(self.num, o.den)
        g2 = polys.gcd_primitive(o.num, self.den)
        n1 = self.num if len(g1) == 1 else polys.div_exact(self.num, g1)
        d2 = o.den if len(g1) == 1 else polys.div_exact(o.den, g1)
        n2 = o.num if len(g2) == 1 else polys.div_exact(o.num, g2)
        d1 = self.den if len(g2) == 1 else polys.div_exact(self.den, g2)
        return RatFunc(self.c * o.c, polys.mul(n1, n2), polys.mul(d1, d2))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.c:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(1 / self.c, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RF_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RatFunc) else other
        if o is None or not isinstance(o, RatFunc):
            return NotImplemented
        return self.c == o.c and self.num == o.num and self.den == o.den

    def __bool__(self):
        return bool(self.c)

    def __hash__(self):
        return hash((self.c, self.num, self.den))

    def eval_at(self, t0) -> Fraction:
        t0 = Fraction(t0)
        den = polys.eval_at(self.den, t0)
        if den == 0:
            raise PoleAtSpecializationError(f"pole at t = {t0}")
        return self.c * polys.eval_at(self.num, t0) / den

    def is_polynomial(self) -> bool:
        return self.den == polys.ONE

    def is_integer_polynomial(self) -> bool:
        return self.den == polys.ONE and self.c.denominator == 1

    def as_fraction(self) -> Fraction | None:
        """The constant value, if this function is constant."""
        if len(self.num) <= 1 and self.den == polys.ONE:
            return self.c if self.num else Fraction(0)
        return None

    def numerator_poly(self) -> Poly:
        """Numerator including content, valid when the content is integral."""
        return polys.scale(self.num, self.c.numerator) if self.c.denominator == 1 else None

    def size(self) -> int:
        """Crude complexity measure used for pivot selection."""
        return len(self.num) + len(self.den)

    def __repr__(self):
        s = polys.to_str(self.num)
        if self.c != 1:
            s = f"{self.c}*({s})"
        if self.den != polys.ONE:
            s = f"({s})/({polys.to_str(self.den)})"
        return s


RF_ZERO = RatFunc(Fraction(0), polys.ONE, polys.ONE)
RF_ONE = RatFunc(Fraction(1), polys.ONE, polys.ONE)
RF_T = RatFunc(Fraction(1), polys.T, polys.ONE)


def ratfunc_sqrt(q: RatFunc) -> RatFunc | None:
    """A square root of q in Q(t), with positive leading coefficients, or None."""
    if not q:
        return RF_ZERO
    if q.c < 0:
        return None
    croot_n = _int_sqrt(q.c.numerator)
    croot_d = _int_sqrt(q.c.denominator)
    if croot_n is None or croot_d is None:
        return None
    nroot = polys.sqrt_exact(q.num)
    if nroot is None:
        return None
    droot = polys.sqrt_exact(q.den)
    if droot is None:
        return None
    return RatFunc(Fraction(croot_n, croot_d), nroot, droot)


def _int_sqrt(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


class TowerElem:
    """Element c00 + c10*s + c01*w + c11*s*w over a TowerContext base."""

    __slots__ = ("ctx", "c00", "c10", "c01", "c11")

    def __init__(self, ctx: TowerContext, c00, c10, c01, c11):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "c00", c00)
        object.__setattr__(self, "c10", c10)
        object.__setattr__(self, "c01", c01)
        object.__setattr__(self, "c11", c11)

    def __setattr__(self, name, value):
        raise AttributeError("TowerElem is immutable")

    def _coerce(self, other):
        if isinstance(other, TowerElem):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("mixed tower contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.scalar(self.ctx.base_one * other)
        if isinstance(other, RatFunc) and isinstance(self.ctx.base_one, RatFunc):
            return self.ctx.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TowerElem(
            self.ctx,
            self.c00 + o.c00,
            self.c10 + o.c10,
            self.c01 + o.c01,
            self.c11 + o.c11,
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TowerElem(
            self.ctx,
            self.c00 - o.c00,
            self.c10 - o.c10,
            self.c01 - o.c01,
            self.c11 - o.c11,
        )

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return TowerElem(self.ctx, -self.c00, -self.c10, -self.c01, -self.c11)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1 = self.c00, self.c10, self.c01, self.c11
        a2, b2, c2, d2 = o.c00, o.c10, o.c01, o.c11
        S, W = self.ctx.s2, self.ctx.w2
        a = a1 * a2 + S * (b1 * b2) + W * (c1 * c2) + S * W * (d1 * d2)
        b = a1 * b2 + b1 * a2 + W * (c1 * d2 + d1 * c2)
        c = a1 * c2 + c1 * a2 + S * (b1 * d2 + d1 * b2)
        d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2
        return TowerElem(self.ctx, a, b, c, d)

    __rmul__ = __mul__

    def conj_s(self) -> "TowerElem":
        """The involution s -> -s (fixes the base and w)."""
        return TowerElem(self.ctx, self.c00, -self.c10, self.c01, -self.c11)

    def conj_w(self) -> "TowerElem":
        """The involution w -> -w."""
        return TowerElem(self.ctx, self.c00, self.c10, -self.c01, -self.c11)

    def inverse(self) -> "TowerElem":
        """Inverse via successive conjugate multiplication down the tower."""
        if not self:
            raise ZeroDivisionError("inverse of zero in the tower")
        # first collapse w: x * conj_w(x) lies in base[s]
        cw = self.conj_w()
        y = self * cw  # c01 = c11 = 0
        e, f = y.c00, y.c10
        n = e * e - self.ctx.s2 * (f * f)  # norm down to the base
        if not n:
            raise ZeroDivisionError("inverse of a zero divisor in the tower")
        ybar = TowerElem(self.ctx, e, -f, self.ctx.base_zero, self.ctx.base_zero)
        inv_n = _base_inverse(n)
        return cw * ybar * self.ctx.scalar(inv_n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ctx.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, TowerElem) else other
        if o is None or not isinstance(o, TowerElem):
            return NotImplemented
        return (
            self.c00 == o.c00
            and self.c10 == o.c10
            and self.c01 == o.c01
            and self.c11 == o.c11
        )

    def __bool__(self):
        return bool(self.c00) or bool(self.c10) or bool(self.c01) or bool(self.c11)

    def __hash__(self):
        return hash((self.c00, self.c10, self.c01, self.c11))

    def in_s_subfield(self) -> bool:
        """True when the element lives in base[s] (no w component)."""
        return not self.c01 and not self.c11

    def is_base(self) -> bool:
        return not self.c10 and not self.c01 and not self.c11

    def size(self) -> int:
        parts = (self.c00, self.c10, self.c01, self.c11)
        if isinstance(self.ctx.base_one, RatFunc):
            return sum(p.size() for p in parts)
        return 4

    def __repr__(self):
        parts = []
        for coeff, sym in (
            (self.c00, ""),
            (self.c10, "s"),
            (self.c01, "w"),
            (self.c11, "s*w"),
        ):
            if coeff:
                parts.append(f"({coeff!r}){'*' + sym if sym else ''}")
        return " + ".join(parts) if parts else "0"


class TowerContext:
    """Coefficient context for the tower base[s, w] with fixed s^2 and w^2.

    The base is whatever s2 and w2 live in: RatFunc for the generic tower
    over Q(t), Fraction for a numeric fiber.
    """

    __slots__ = ("s2", "w2", "base_zero", "base_one", "zero", "one", "s", "w")

    def __init__(self, s2, w2, base_zero, base_one):
        object.__setattr__(self, "s2", s2)
        object.__setattr__(self, "w2", w2)
        object.__setattr__(self, "base_zero", base_zero)
        object.__setattr__(self, "base_one", base_one)
        object.__setattr__(self, "zero", TowerElem(self, base_zero, base_zero, base_zero, base_zero))
        object.__setattr__(self, "one", TowerElem(self, base_one, base_zero, base_zero, base_zero))
        object.__setattr__(self, "s", TowerElem(self, base_zero, base_one, base_zero, base_zero))
        object.__setattr__(self, "w", TowerElem(self, base_zero, base_zero, base_one, base_zero))

    def __setattr__(self, name, value):
        raise AttributeError("TowerContext is immutable")

    def scalar(self, x) -> "TowerElem":
        z = self.base_zero
        return TowerElem(self, x, z, z, z)

    def elem(self, c00, c10, c01, c11) -> "TowerElem":
        return TowerElem(self, c00, c10, c01, c11)

    def __eq__(self, other):
        if not isinstance(other, TowerContext):
            return NotImplemented
        return self.s2 == other.s2 and self.w2 == other.w2

    def __hash__(self):
        return hash((self.s2, self.w2))

    def __repr__(self):
        return f"TowerContext(s^2={self.s2!r}, w^2={self.w2!r})"


def generic_tower() -> TowerContext:
    """The tower Q(t)[s, w] with s^2 = t^2 - 1, w^2 = t^2 + 2."""
    t2 = RF_T * RF_T
    return TowerContext(t2 - 1, t2 + 2, RF_ZERO, RF_ONE)


def numeric_tower(t0) -> TowerContext:
    """The fiber of the tower over a rational t0."""
    t0 = Fraction(t0)
    return TowerContext(t0 * t0 - 1, t0 * t0 + 2, Fraction(0), Fraction(1))


TOWER = generic_tower()


def _base_inverse(x):
    if isinstance(x, RatFunc):
        return x.inverse()
    return 1 / x


def tau_s(x: TowerElem) -> TowerElem:
    """Ring automorphism sending s -> -s, fixing the base field and w."""
    return x.conj_s()


def tower_inverse(x: TowerElem) -> TowerElem:
    return x.inverse()


class Specialization:
    """Evaluation data t -> t0, s -> s_value (and optionally w -> w_value).

    s_value and w_value live in Q(sqrt d) and must square to t0^2 - 1 and
    t0^2 + 2 respectively; this is checked eagerly.
    """

    __slots__ = ("t0", "d", "s_value", "w_value")

    def __init__(self, t0, d: int, s_value: QuadElem, w_value: QuadElem | None = None):
        require_valid_d(d)
        t0 = Fraction(t0)
        if s_value.d != d:
            raise ValueError("s_value lives in the wrong quadratic field")
        if s_value * s_value != QuadElem(t0 * t0 - 1, 0, d):
            raise ValueError(f"s_value^2 != t0^2 - 1 for t0 = {t0}")
        if w_value is not None:
            if w_value.d != d:
                raise ValueError("w_value lives in the wrong quadratic field")
            if w_value * w_value != QuadElem(t0 * t0 + 2, 0, d):
                raise ValueError(f"w_value^2 != t0^2 + 2 for t0 = {t0}")
        object.__setattr__(self, "t0", t0)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "s_value", s_value)
        object.__setattr__(self, "w_value", w_value)

    def __setattr__(self, name, value):
        raise AttributeError("Specialization is immutable")

    @classmethod
    def from_pell(cls, t: int, y: int, d: int) -> "Specialization":
        """Specialization at a Pell solution: s -> y*sqrt(d)."""
        return cls(t, d, QuadElem(0, y, d))

    def __repr__(self):
        return f"Specialization(t={self.t0}, d={self.d})"


def specialize(x: TowerElem, spec: Specialization) -> QuadElem:
    """Evaluate a tower element over Q(t) into Q(sqrt d).

    Ring homomorphism wherever defined; raises PoleAtSpecializationError on
    denominator zeros and MissingRadicalValueError if w is needed but no
    w_value was supplied.
    """
    d = spec.d
    out = QuadElem(x.c00.eval_at(spec.t0), 0, d)
    if x.c10:
        out = out + QuadElem(x.c10.eval_at(spec.t0), 0, d) * spec.s_value
    if x.c01 or x.c11:
        if spec.w_value is None:
            raise MissingRadicalValueError("element involves w but w_value is absent")
        if x.c01:
            out = out + QuadElem(x.c01.eval_at(spec.t0), 0, d) * spec.w_value
        if x.c11:
            out = out + (
                QuadElem(x.c11.eval_at(spec.t0), 0, d) * spec.s_value * spec.w_value
            )
    return out


def evaluate_at(x: TowerElem, t0, target: TowerContext) -> TowerElem:
    """Evaluate the Q(t) coefficients at t0, keeping s and w formal."""
    return target.elem(
        x.c00.eval_at(t0),
        x.c10.eval_at(t0),
        x.c01.eval_at(t0),
        x.c11.eval_at(t0),
    )
