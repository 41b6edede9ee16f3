"""Dense exact matrix algebra, generic over the coefficient domains.

A Domain bundles the zero/one of a coefficient type together with the
few capabilities the algorithms need.  Elements themselves carry the
arithmetic through operator overloading; everything stays exact.

Determinants use fraction-free (Bareiss) elimination over integral
domains and ordinary division-based elimination over fields.  Reduced
row echelon form is unique, so pivot-row heuristics below only affect
speed, never results.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .funcfield import RF_ONE, RF_ZERO, RatFunc, TowerContext
from .quadratic import GaussianInt, QuadElem, ResidueElem


class NonSquareError(ValueError):
    """The operation needs a square matrix."""


class NonDiagonalError(ValueError):
    """The operation needs a diagonal matrix."""


class ZeroDiagonalEntryError(ValueError):
    """A diagonal entry is zero where a sign is required."""


class Domain:
    """Coefficient-domain descriptor: zero, one, and division capabilities."""

    __slots__ = ("name", "zero", "one", "is_field", "_exact_div")

    def __init__(self, name, zero, one, is_field=True, exact_div=None):
        self.name = name
        self.zero = zero
        self.one = one
        self.is_field = is_field
        self._exact_div = exact_div

    def from_int(self, n: int):
        return self.one * n

    def div(self, a, b):
        return a / b

    def exact_div(self, a, b):
        if self._exact_div is not None:
            return self._exact_div(a, b)
        return a / b

    def size(self, x) -> int:
        f = getattr(x, "size", None)
        if f is not None:
            return f()
        if isinstance(x, Fraction):
            return x.numerator.bit_length() + x.denominator.bit_length()
        if isinstance(x, int):
            return x.bit_length()
        return 1

    def __repr__(self):
        return f"Domain({self.name})"


def _int_exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact integer division")
    return q


def _gaussian_exact_div(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    n = b.norm()
    num = a * b.conjugate()
    q, r = divmod(num.re, n)
    if r:
        raise ArithmeticError("inexact division in Z[i]")
    q2, r2 = divmod(num.im, n)
    if r2:
        raise ArithmeticError("inexact division in Z[i]")
    return GaussianInt(q, q2)


QQ = Domain("QQ", Fraction(0), Fraction(1))
ZZ = Domain("ZZ", 0, 1, is_field=False, exact_div=_int_exact_div)
GAUSSIAN = Domain(
    "Z[i]", GaussianInt(0), GaussianInt(1), is_field=False, exact_div=_gaussian_exact_div
)
FUNCTION_FIELD = Domain("Q(t)", RF_ZERO, RF_ONE)


def quad_field(d: int) -> Domain:
    return Domain(f"Q(sqrt{d})", QuadElem(0, 0, d), QuadElem(1, 0, d))


def tower_field(ctx: TowerContext) -> Domain:
    return Domain("tower", ctx.zero, ctx.one)


def residue_ring(p: int, d: int) -> Domain:
    return Domain(
        f"F_{p}[x]/(x^2-{d})",
        ResidueElem(0, 0, p, d),
        ResidueElem(1, 0, p, d),
        is_field=False,
    )


class Matrix:
    """Immutable dense matrix over a Domain."""

    __slots__ = ("rows", "cols", "entries", "domain")

    def __init__(self, domain: Domain, entries: Sequence[Sequence]):
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        ents = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged rows")
            ents.append(tuple(row))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(ents))
        object.__setattr__(self, "domain", domain)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, domain: Domain, n: int) -> "Matrix":
        z, o = domain.zero, domain.one
        return cls(domain, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, domain: Domain, rows: int, cols: int) -> "Matrix":
        z = domain.zero
        return cls(domain, [[z] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, domain: Domain, diag: Sequence) -> "Matrix":
        z = domain.zero
        n = len(diag)
        return cls(
            domain, [[diag[i] if i == j else z for j in range(n)] for i in range(n)]
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch in matrix product")
            z = self.domain.zero
            bcols = list(zip(*other.entries)) if other.entries else []
            out = []
            for arow in self.entries:
                orow = []
                for bcol in bcols:
                    acc = z
                    for a, b in zip(arow, bcol):
                        if a and b:
                            acc = acc + a * b
                    orow.append(acc)
                out.append(orow)
            return Matrix(self.domain, out)
        return Matrix(
            self.domain, [[e * other for e in row] for row in self.entries]
        )

    def __rmul__(self, other):
        return Matrix(self.domain, [[other * e for e in row] for row in self.entries])

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("dimension mismatch in matrix sum")
        return Matrix(
            self.domain,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("dimension mismatch in matrix difference")
        return Matrix(
            self.domain,
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def __neg__(self):
        return Matrix(self.domain, [[-e for e in row] for row in self.entries])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def key(self):
        """Canonical hashable key (exact dedup for group enumeration)."""
        return self.entries

    def transpose(self) -> "Matrix":
        return Matrix(self.domain, list(zip(*self.entries)))

    def star(self, involution: Callable) -> "Matrix":
        """Conjugate transpose: apply the involution entrywise, then transpose."""
        return Matrix(
            self.domain,
            list(zip(*[[involution(e) for e in row] for row in self.entries])),
        )

    def map_entries(self, fn: Callable, domain: Domain | None = None) -> "Matrix":
        return Matrix(
            domain or self.domain, [[fn(e) for e in row] for row in self.entries]
        )

    def trace(self):
        if self.rows != self.cols:
            raise NonSquareError("trace of a non-square matrix")
        acc = self.domain.zero
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        o = self.domain.one
        for i in range(self.rows):
            for j in range(self.cols):
                e = self.entries[i][j]
                if i == j:
                    if e != o:
                        return False
                elif e:
                    return False
        return True

    def power(self, n: int) -> "Matrix":
        if self.rows != self.cols:
            raise NonSquareError("power of a non-square matrix")
        if n < 0:
            return inverse(self).power(-n)
        out = Matrix.identity(self.domain, self.rows)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        body = "\n ".join(
            "[" + ", ".join(repr(e) for e in row) + "]" for row in self.entries
        )
        return f"Matrix({self.domain.name}, {self.rows}x{self.cols}\n {body})"


def det(m: Matrix):
    """Exact determinant: Bareiss over integral domains, division over fields."""
    if m.rows != m.cols:
        raise NonSquareError("determinant of a non-square matrix")
    n = m.rows
    dom = m.domain
    if n == 0:
        return dom.one
    a = [list(row) for row in m.entries]
    if dom.is_field:
        return _det_field(a, dom)
    return _det_bareiss(a, dom)


def _det_field(a, dom):
    n = len(a)
    acc = dom.one
    sign = 1
    for k in range(n):
        piv = None
        best = None
        for i in range(k, n):
            if a[i][k]:
                sz = dom.size(a[i][k])
                if best is None or sz < best:
                    piv, best = i, sz
        if piv is None:
            return dom.zero
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pivot = a[k][k]
        acc = acc * pivot
        for i in range(k + 1, n):
            f = a[i][k]
            if f:
                f = dom.div(f, pivot)
                rowk = a[k]
                rowi = a[i]
                for j in range(k + 1, n):
                    if rowk[j]:
                        rowi[j] = rowi[j] - f * rowk[j]
                rowi[k] = dom.zero
    return acc if sign == 1 else -acc


def _det_bareiss(a, dom):
    n = len(a)
    sign = 1
    prev = dom.one
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return dom.zero
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = dom.exact_div(num, prev)
            a[i][k] = dom.zero
        prev = pivot
    result = a[n - 1][n - 1]
    return result if sign == 1 else -result


def _rref(rows_in, dom, ncols):
    """In-place reduced row echelon form; returns (rows, pivot column list).

    RREF is unique, so the size-based pivot heuristic affects speed only.
    """
    rows = rows_in
    nrows = len(rows)
    pivots = []
    r = 0
    for col in range(ncols):
        if r >= nrows:
            break
        piv = None
        best = None
        for i in range(r, nrows):
            e = rows[i][col]
            if e:
                sz = dom.size(e)
                if best is None or sz < best:
                    piv, best = i, sz
                    if sz <= 2:
                        break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pivot = prow[col]
        if pivot != dom.one:
            inv = dom.div(dom.one, pivot)
            for j in range(col, ncols):
                if prow[j]:
                    prow[j] = inv * prow[j]
        nz = [j for j in range(col + 1, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][col]
            if f:
                rowi = rows[i]
                rowi[col] = dom.zero
                for j in nz:
                    rowi[j] = rowi[j] - f * prow[j]
        pivots.append(col)
        r += 1
    return rows, pivots


def rref(m: Matrix):
    rows, pivots = _rref([list(row) for row in m.entries], m.domain, m.cols)
    return Matrix(m.domain, rows), pivots


def rank(m: Matrix) -> int:
    _, pivots = _rref([list(row) for row in m.entries], m.domain, m.cols)
    return len(pivots)


def solve_nullspace(m: Matrix) -> list[list]:
    """Basis of the right nullspace; one vector per free column, in order."""
    dom = m.domain
    rows, pivots = _rref([list(row) for row in m.entries], dom, m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [dom.zero] * m.cols
        v[free] = dom.one
        for r, pc in enumerate(pivots):
            coeff = rows[r][free]
            if coeff:
                v[pc] = -coeff
        basis.append(v)
    return basis


def inverse(m: Matrix) -> Matrix:
    """Inverse over a field domain via Gauss-Jordan."""
    if m.rows != m.cols:
        raise NonSquareError("inverse of a non-square matrix")
    n = m.rows
    dom = m.domain
    z, o = dom.zero, dom.one
    aug = [
        list(m.entries[i]) + [o if i == j else z for j in range(n)] for i in range(n)
    ]
    rows, pivots = _rref(aug, dom, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix(dom, [row[n:] for row in rows[:n]])


def solve_right(m: Matrix, rhs: Matrix) -> Matrix:
    """Solve m @ X = rhs over a field; raises if m is singular."""
    if m.rows != m.cols:
        raise NonSquareError("solve needs a square matrix")
    n = m.rows
    dom = m.domain
    aug = [list(m.entries[i]) + list(rhs.entries[i]) for i in range(n)]
    rows, pivots = _rref(aug, dom, n + rhs.cols)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix(dom, [row[n:] for row in rows[:n]])


class HermitianForm:
    """A sesqui-symmetric matrix J (J transposed equals the conjugated J)."""

    __slots__ = ("matrix", "involution", "involution_name")

    def __init__(self, matrix: Matrix, involution: Callable, involution_name: str = ""):
        if matrix.rows != matrix.cols:
            raise NonSquareError("a form matrix must be square")
        if matrix.star(involution) != matrix:
            raise ValueError("matrix is not sesqui-symmetric for the involution")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "involution", involution)
        object.__setattr__(self, "involution_name", involution_name)

    def __setattr__(self, name, value):
        raise AttributeError("HermitianForm is immutable")

    def apply(self, x: Sequence, y: Sequence):
        """The sesquilinear value x* J y."""
        dom = self.matrix.domain
        acc = dom.zero
        for i, xi in enumerate(x):
            if not xi:
                continue
            xc = self.involution(xi)
            for j, yj in enumerate(y):
                if yj and self.matrix.entries[i][j]:
                    acc = acc + xc * self.matrix.entries[i][j] * yj
        return acc

    def preserved_by(self, g: Matrix) -> bool:
        return g.star(self.involution) * self.matrix * g == self.matrix

    def __eq__(self, other):
        if not isinstance(other, HermitianForm):
            return NotImplemented
        return self.matrix == other.matrix

    def __repr__(self):
        return f"HermitianForm({self.involution_name}, {self.matrix!r})"


def invariant_form_system(gens: Iterable[Matrix], involution: Callable) -> Matrix:
    """Linear system in the n^2 entries of J for g* J g = J over all g."""
    gens = list(gens)
    n = gens[0].rows
    dom = gens[0].domain
    z = dom.zero
    rows = []
    for g in gens:
        gs = g.star(involution)
        for i in range(n):
            for j in range(n):
                row = [z] * (n * n)
                for k in range(n):
                    a = gs.entries[i][k]
                    if not a:
                        continue
                    grow = g.entries
                    for l in range(n):
                        b = grow[l][j]
                        if b:
                            row[k * n + l] = row[k * n + l] + a * b
                row[i * n + j] = row[i * n + j] - dom.one
                if any(row):
                    rows.append(row)
    if not rows:
        rows.append([z] * (n * n))  # the system is trivial; everything solves it
    return Matrix(dom, rows)


def solve_invariant_forms(
    gens: Iterable[Matrix], involution: Callable, involution_name: str = ""
) -> list[HermitianForm]:
    """Basis of {J : g* J g = J for all g}, as sesqui-symmetric representatives.

    The returned list has one entry per free variable of the solution space
    (free variables taken in lexicographic pivot order).  Each basis matrix
    J is replaced by J + J*; if that vanishes, s*J is used instead, which is
    sesqui-symmetric whenever J is anti-symmetric under *.
    """
    gens = list(gens)
    n = gens[0].rows
    dom = gens[0].domain
    system = invariant_form_system(gens, involution)
    basis = solve_nullspace(system)
    forms = []
    for vec in basis:
        j = Matrix(dom, [vec[i * n : (i + 1) * n] for i in range(n)])
        sym = j + j.star(involution)
        if not any(any(row) for row in sym.entries):
            sym = _scalar_times_antisymmetric(j, involution, dom)
        forms.append(HermitianForm(sym, involution, involution_name))
    return forms


def _scalar_times_antisymmetric(j: Matrix, involution, dom: Domain) -> Matrix:
    # for J with J* = -J, any scalar anti-fixed by the involution makes sJ
    # sesqui-symmetric; the tower's s and the quadratic sqrt(d) qualify
    ctx = getattr(dom.one, "ctx", None)
    if ctx is not None:
        s = ctx.s
        return j.map_entries(lambda e: s * e)
    if isinstance(dom.one, QuadElem):
        s = QuadElem(0, 1, dom.one.d)
        return j.map_entries(lambda e: s * e)
    raise ValueError("cannot symmetrize an antisymmetric solution in this domain")


def solve_conjugator(
    a_gens: Sequence[Matrix], b_gens: Sequence[Matrix], seed: int = 0, tries: int = 64
) -> Matrix | None:
    """Invertible P with P A_i = B_i P for all i, or None.

    The intertwiner space is computed exactly; an invertible element is then
    located by trying basis vectors and seeded small-integer combinations.
    The invertible locus is Zariski-open, so small combinations succeed
    generically.
    """
    if len(a_gens) != len(b_gens):
        raise ValueError("generator lists must have equal length")
    n = a_gens[0].rows
    dom = a_gens[0].domain
    z = dom.zero
    rows = []
    for a, b in zip(a_gens, b_gens):
        for i in range(n):
            for j in range(n):
                row = [z] * (n * n)
                for l in range(n):
                    e = a.entries[l][j]
                    if e:
                        row[i * n + l] = row[i * n + l] + e
                for k in range(n):
                    e = b.entries[i][k]
                    if e:
                        row[k * n + j] = row[k * n + j] - e
                if any(row):
                    rows.append(row)
    if not rows:
        rows.append([z] * (n * n))
    basis = solve_nullspace(Matrix(dom, rows))
    if not basis:
        return None

    def as_matrix(vec):
        return Matrix(dom, [vec[i * n : (i + 1) * n] for i in range(n)])

    for vec in basis:
        p = as_matrix(vec)
        if det(p):
            return p
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [rng.randint(-3, 3) for _ in basis]
        if not any(coeffs):
            continue
        vec = [z] * (n * n)
        for c, bv in zip(coeffs, basis):
            if c:
                for idx in range(n * n):
                    if bv[idx]:
                        vec[idx] = vec[idx] + bv[idx] * c
        p = as_matrix(vec)
        if det(p):
            return p
    return None


def signature_of_diagonal(m: Matrix) -> tuple[int, int]:
    """Counts of positive and negative diagonal entries under sqrt(d) > 0."""
    if m.rows != m.cols:
        raise NonSquareError("signature needs a square matrix")
    for i in range(m.rows):
        for j in range(m.cols):
            if i != j and m.entries[i][j]:
                raise NonDiagonalError(f"nonzero off-diagonal entry at {(i, j)}")
    pos = neg = 0
    for i in range(m.rows):
        e = m.entries[i][i]
        if not e:
            raise ZeroDiagonalEntryError(f"zero diagonal entry at index {i}")
        sign_fn = getattr(e, "sign", None)
        s = sign_fn() if sign_fn is not None else ((e > 0) - (e < 0))
        if s > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg
