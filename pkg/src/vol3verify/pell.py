"""Pell equations, their solution sequence, and primitive prime divisors.

The unit u = t1 + y1*sqrt(d) generates all positive solutions; the numbers
S_n = 2 t_n = u^n + u^-n form a Lucas-style sequence whose primitive prime
divisors drive the choice of congruence levels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .quadratic import InvalidDError, require_valid_d


@dataclass(frozen=True)
class PellSolution:
    d: int
    n: int
    t: int
    y: int

    def __post_init__(self):
        require_valid_d(self.d)
        if self.t <= 0 or self.y <= 0:
            raise ValueError("Pell solutions here are positive")
        if self.t * self.t - self.d * self.y * self.y != 1:
            raise ValueError(
                f"({self.t}, {self.y}) does not solve t^2 - {self.d} y^2 = 1"
            )


@lru_cache(maxsize=None)
def pell_fundamental(d: int) -> PellSolution:
    """Minimal positive solution of t^2 - d y^2 = 1, via the continued
    fraction expansion of sqrt(d)."""
    require_valid_d(d)
    a0 = isqrt(d)
    m, den, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - d * q * q != 1:
        m = den * a - m
        den = (d - m * m) // den
        a = (a0 + m) // den
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
    return PellSolution(d, 1, p, q)


def _unit_power(d: int, n: int) -> tuple[int, int]:
    f = pell_fundamental(d)
    t, y = 1, 0
    bt, by = f.t, f.y
    while n:
        if n & 1:
            t, y = t * bt + d * y * by, t * by + y * bt
        bt, by = bt * bt + d * by * by, 2 * bt * by
        n >>= 1
    return t, y


def pell_solution(d: int, n: int) -> PellSolution:
    """The n-th solution (t_n, y_n), from the n-th power of the unit."""
    if n < 1:
        raise ValueError("the solution index starts at 1")
    t, y = _unit_power(d, n)
    return PellSolution(d, n, t, y)


def pell_sequence(d: int, upto: int) -> list[PellSolution]:
    """Solutions for n = 1..upto, computed by iterated unit multiplication."""
    f = pell_fundamental(d)
    out = []
    t, y = f.t, f.y
    for n in range(1, upto + 1):
        out.append(PellSolution(d, n, t, y))
        t, y = t * f.t + d * y * f.y, t * f.y + y * f.t
    return out


# ---------------------------------------------------------------------------
# factoring

_SMALL_PRIME_BOUND = 10**6

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# deterministic below 3.3 * 10^24; beyond that the same witnesses make the
# test probabilistic with error far below any practical concern


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n; deterministic parameter sweep."""
    if n % 2 == 0:
        return 2
    for c in range(1, 1000):
        x, y, d = 2, 2, 1
        f = lambda v: (v * v + c) % n
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"failed to split {n}")


def factorize(n: int) -> list[tuple[int, int]]:
    """Complete factorization of n >= 1 as sorted (prime, exponent) pairs."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    factors: dict[int, int] = {}

    def add(p: int):
        factors[p] = factors.get(p, 0) + 1

    for p in (2, 3, 5):
        while n % p == 0:
            add(p)
            n //= p
    k = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while k * k <= n and k < _SMALL_PRIME_BOUND:
        while n % k == 0:
            add(k)
            n //= k
        k += wheel[i % 8]
        i += 1
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            add(m)
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return sorted(factors.items())


# ---------------------------------------------------------------------------
# primitive prime divisors of S_n = 2 t_n


@dataclass(frozen=True)
class PrimitivePrimeRecord:
    d: int
    n: int
    s_n: int
    factorization: tuple
    primitive_primes: tuple
    selected: int | None = None

    @property
    def t(self) -> int:
        return self.s_n // 2


def lucas_pair_check(d: int) -> bool:
    """The hypotheses making (u, 1/u) a Lucas pair, checked concretely.

    u + 1/u = 2 t_1 and u * (1/u) = 1 must be nonzero coprime integers and
    u^2 must not be a root of unity; positivity of the fundamental solution
    gives u > 1, hence the last point.
    """
    f = pell_fundamental(d)
    trace = 2 * f.t
    product = 1
    if trace == 0 or product == 0:
        return False
    if gcd(trace, product) != 1:
        return False
    return f.t >= 1 and f.y >= 1  # u = t1 + y1 sqrt(d) > 1


@lru_cache(maxsize=None)
def _s_values(d: int, upto: int) -> tuple[int, ...]:
    return tuple(2 * sol.t for sol in pell_sequence(d, upto))


def primitive_prime_divisors(d: int, n: int) -> PrimitivePrimeRecord:
    """Primitive prime divisors of S_n: factors of S_n dividing no earlier S_m.

    Primitivity is decided by direct divisibility against S_1..S_{n-1},
    not by any modular shortcut.
    """
    if n < 1:
        raise ValueError("the index starts at 1")
    if not lucas_pair_check(d):
        raise InvalidDError(f"(u, 1/u) is not a Lucas pair for d = {d}")
    svals = _s_values(d, n)
    s_n = svals[-1]
    fact = factorize(s_n)
    primitive = tuple(
        p for p, _ in fact if all(svals[m] % p != 0 for m in range(n - 1))
    )
    return PrimitivePrimeRecord(
        d=d, n=n, s_n=s_n, factorization=tuple(fact), primitive_primes=primitive
    )


SELECTION_RULES = ("largest-primitive", "smallest-odd-primitive", "golden-table")

# regression values for small d, used by the golden-table rule and the
# membership checks in the verification suite
KNOWN_PRIME_TABLE = {
    3: {1: 2, 2: 7, 3: 13, 4: 97, 5: 181},
    5: {1: 3, 2: 7, 3: 107, 4: 1103, 5: 2521},
}


@dataclass(frozen=True)
class SelectedPrime:
    n: int
    t: int
    y: int
    p: int
    primitive_primes: tuple


@dataclass(frozen=True)
class PrimeSelection:
    d: int
    rule: str
    rows: tuple
    skipped: tuple  # (n, reason) pairs


def select_prime_sequence(d: int, upto: int, rule: str = "largest-primitive") -> PrimeSelection:
    """Pick one odd primitive prime p_n | t_n per index, strictly increasing.

    Indices with no usable prime (no odd primitive divisor, a value below
    the running maximum, or a golden-table miss) are skipped and reported.
    Since every primitive p != 2 divides S_n = 2 t_n, oddness gives p | t_n.
    """
    if rule not in SELECTION_RULES:
        raise ValueError(f"unknown selection rule {rule!r}")
    rows = []
    skipped = []
    last = 0
    solutions = pell_sequence(d, upto)
    for n in range(1, upto + 1):
        record = primitive_prime_divisors(d, n)
        odd = [p for p in record.primitive_primes if p != 2]
        if rule == "largest-primitive":
            candidate = max(odd) if odd else None
        elif rule == "smallest-odd-primitive":
            candidate = min(odd) if odd else None
        else:
            candidate = KNOWN_PRIME_TABLE.get(d, {}).get(n)
            if candidate is not None and candidate % 2 == 0:
                skipped.append((n, f"table value {candidate} excluded (even)"))
                continue
            if candidate is not None and candidate not in record.primitive_primes:
                skipped.append((n, f"table value {candidate} is not primitive"))
                continue
        if candidate is None:
            skipped.append((n, "no odd primitive prime divisor"))
            continue
        if candidate <= last:
            skipped.append((n, f"candidate {candidate} not above {last}"))
            continue
        sol = solutions[n - 1]
        if sol.t % candidate != 0:
            skipped.append((n, f"candidate {candidate} does not divide t_n"))
            continue
        rows.append(
            SelectedPrime(
                n=n,
                t=sol.t,
                y=sol.y,
                p=candidate,
                primitive_primes=record.primitive_primes,
            )
        )
        last = candidate
    return PrimeSelection(d=d, rule=rule, rows=tuple(rows), skipped=tuple(skipped))
