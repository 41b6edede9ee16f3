"""Exact arithmetic in Q(sqrt d), its ring of integers, Z[i], and residue rings.

All values are immutable; every operation returns a fresh value.  The residue
ring F_p[x]/(x^2 - d) is used as a plain quotient ring: nothing here decides
whether x^2 - d is irreducible mod p, and p = 2 is rejected everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


class InvalidDError(ValueError):
    """d must be a square-free integer >= 2."""


class EvenPrimeError(ValueError):
    """Residue arithmetic requires an odd prime."""


class NotAHomomorphismError(ValueError):
    """The map Z[i]/(p) -> O_d/(p) needs d*y^2 = -1 mod p."""


class NonIntegralEntryError(ValueError):
    """A value expected to lie in the ring of integers does not."""


_square_free_cache: set = set()


def is_square_free(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        while n % k == 0:
            n //= k
        k += 1
    return True


def require_valid_d(d: int) -> int:
    if d in _square_free_cache:
        return d
    if not isinstance(d, int) or d < 2 or not is_square_free(d):
        raise InvalidDError(f"d must be square-free and >= 2, got {d!r}")
    _square_free_cache.add(d)
    return d


class QuadElem:
    """Element a + b*sqrt(d) of the real quadratic field Q(sqrt d)."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        require_valid_d(d)
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadElem is immutable")

    @classmethod
    def rational(cls, a, d: int) -> "QuadElem":
        return cls(a, 0, d)

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise ValueError(f"mixed fields: sqrt({self.d}) vs sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt d)")
        return QuadElem(self.a / n, -self.b / n, self.d)

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
        out = QuadElem(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, QuadElem) else other
        if o is None or not isinstance(o, QuadElem):
            return NotImplemented
        return self.d == o.d and self.a == o.a and self.b == o.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def norm(self) -> Fraction:
        """Field norm a^2 - d*b^2 (the product x * tau(x))."""
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.a, -self.b, self.d)

    def sign(self) -> int:
        """Sign under the real embedding with sqrt(d) > 0."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # a and b disagree; compare |a| against |b| sqrt(d)
        bigger_rational = abs(a) ** 2 > self.d * abs(b) ** 2
        if bigger_rational:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt{self.d})"


def tau(x: QuadElem) -> QuadElem:
    """Nontrivial Galois involution of Q(sqrt d): sqrt(d) -> -sqrt(d)."""
    return x.conjugate()


def is_integral(x: QuadElem) -> bool:
    """Membership in the ring of integers O_d, split on d mod 4."""
    if x.d % 4 == 1:
        p, q = 2 * x.a, 2 * x.b
        return p.denominator == 1 and q.denominator == 1 and (p - q) % 2 == 0
    return x.a.denominator == 1 and x.b.denominator == 1


class OdElem:
    """Element (p + q*sqrt(d))/2 of the ring of integers of Q(sqrt d).

    One half-integer representation serves both congruence classes of d:
    for d = 2, 3 mod 4 both p and q must be even, for d = 1 mod 4 they
    must share a parity.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, p: int, q: int, d: int):
        require_valid_d(d)
        if d % 4 == 1:
            if (p - q) % 2:
                raise NonIntegralEntryError(f"({p} + {q}*sqrt{d})/2 is not integral")
        elif p % 2 or q % 2:
            raise NonIntegralEntryError(f"({p} + {q}*sqrt{d})/2 is not integral")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("OdElem is immutable")

    @classmethod
    def from_quad(cls, x: QuadElem) -> "OdElem":
        if not is_integral(x):
            raise NonIntegralEntryError(f"{x!r} is not in O_{x.d}")
        return cls(int(2 * x.a), int(2 * x.b), x.d)

    @classmethod
    def from_int(cls, n: int, d: int) -> "OdElem":
        return cls(2 * n, 0, d)

    def to_quad(self) -> QuadElem:
        return QuadElem(Fraction(self.p, 2), Fraction(self.q, 2), self.d)

    def _coerce(self, other):
        if isinstance(other, OdElem):
            if other.d != self.d:
                raise ValueError("mixed rings of integers")
            return other
        if isinstance(other, int):
            return OdElem(2 * other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return OdElem(self.p + o.p, self.q + o.q, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return OdElem(self.p - o.p, self.q - o.q, self.d)

    def __neg__(self):
        return OdElem(-self.p, -self.q, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # ((p1 + q1 r)/2)((p2 + q2 r)/2) with r = sqrt(d); the parity
        # invariants make both halves below integral
        p = (self.p * o.p + self.d * self.q * o.q) // 2
        q = (self.p * o.q + self.q * o.p) // 2
        return OdElem(p, q, self.d)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.p == 2 * other and self.q == 0
        if not isinstance(other, OdElem):
            return NotImplemented
        return (self.p, self.q, self.d) == (other.p, other.q, other.d)

    def __bool__(self):
        return bool(self.p or self.q)

    def __hash__(self):
        return hash((self.p, self.q, self.d))

    def conjugate(self) -> "OdElem":
        return OdElem(self.p, -self.q, self.d)

    def __repr__(self):
        return f"({self.p} + {self.q}*sqrt{self.d})/2"


class GaussianInt:
    """Gaussian integer re + im*i."""

    __slots__ = ("re", "im")

    def __init__(self, re: int, im: int = 0):
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianInt is immutable")

    def _coerce(self, other):
        if isinstance(other, GaussianInt):
            return other
        if isinstance(other, int):
            return GaussianInt(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianInt(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.re == other and self.im == 0
        if not isinstance(other, GaussianInt):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __bool__(self):
        return bool(self.re or self.im)

    def __hash__(self):
        return hash((self.re, self.im))

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        return f"({self.re}{self.im:+}i)"


class ResidueElem:
    """Element a + b*x of F_p[x]/(x^2 - d), for an odd prime p."""

    __slots__ = ("a", "b", "p", "d")

    def __init__(self, a: int, b: int, p: int, d: int):
        if p == 2:
            raise EvenPrimeError("residue arithmetic mod 2 is not supported")
        if p < 3:
            raise ValueError(f"p must be an odd prime, got {p}")
        object.__setattr__(self, "a", a % p)
        object.__setattr__(self, "b", b % p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", d % p)

    def __setattr__(self, name, value):
        raise AttributeError("ResidueElem is immutable")

    def _coerce(self, other):
        if isinstance(other, ResidueElem):
            if (other.p, other.d) != (self.p, self.d):
                raise ValueError("mixed residue rings")
            return other
        if isinstance(other, int):
            return ResidueElem(other, 0, self.p, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ResidueElem(self.a + o.a, self.b + o.b, self.p, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ResidueElem(self.a - o.a, self.b - o.b, self.p, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return ResidueElem(-self.a, -self.b, self.p, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ResidueElem(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.p,
            self.d,
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.a == other % self.p and self.b == 0
        if not isinstance(other, ResidueElem):
            return NotImplemented
        return (self.a, self.b, self.p, self.d) == (other.a, other.b, other.p, other.d)

    def __bool__(self):
        return bool(self.a or self.b)

    def __hash__(self):
        return hash((self.a, self.b, self.p, self.d))

    def __repr__(self):
        return f"({self.a} + {self.b}x mod {self.p}, x^2={self.d})"


def reduce_mod_p(x: OdElem, p: int) -> ResidueElem:
    """Ring homomorphism O_d -> F_p[x]/(x^2 - d) for odd p.

    The half-integer representation needs 2 invertible, hence p odd.
    """
    if p == 2:
        raise EvenPrimeError("reduction mod 2 is not supported")
    inv2 = (p + 1) // 2
    return ResidueElem((x.p * inv2) % p, (x.q * inv2) % p, p, x.d)


def gaussian_hom_f(z: GaussianInt, y: int, d: int, p: int) -> ResidueElem:
    """The map Z[i]/(p) -> O_d/(p) sending 1 -> 1 and i -> y*x.

    Well-defined (and then a ring homomorphism) exactly when
    d*y^2 = -1 mod p, which is what Pell solutions with p | t provide.
    """
    if p == 2:
        raise EvenPrimeError("residue arithmetic mod 2 is not supported")
    if (d * y * y + 1) % p != 0:
        raise NotAHomomorphismError(
            f"d*y^2 = {d}*{y}^2 is not -1 mod {p}; the map is not well defined"
        )
    return ResidueElem(z.re % p, (z.im * y) % p, p, d)


def is_rational_square(q) -> Fraction | None:
    """The positive rational square root of q, or None if q is not a square."""
    q = Fraction(q)
    if q < 0:
        return None
    if q == 0:
        return Fraction(0)
    rn = isqrt(q.numerator)
    if rn * rn != q.numerator:
        return None
    rd = isqrt(q.denominator)
    if rd * rd != q.denominator:
        return None
    return Fraction(rn, rd)
