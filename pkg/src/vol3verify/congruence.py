"""Integral special unitary groups, reduction mod p, the commuting diagram,
the finite image at t = 0, and Schreier generators of its kernel.

The chain verified here: specializing the 8-dim representation at a Pell
solution (t_n, y_n) lands in SU(J_{t_n}; O_d, tau); reducing modulo an odd
primitive prime p | t_n matches the image of the Gaussian specialization
under the residue-ring homomorphism i -> y*sqrt(d); hence the kernel of the
Gaussian specialization lands in the principal congruence subgroup.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .funcfield import Specialization, specialize
from .linalg import (
    GAUSSIAN,
    QQ,
    Domain,
    HermitianForm,
    Matrix,
    det,
    inverse,
    quad_field,
    rank,
    residue_ring,
)
from .pell import pell_solution
from .quadratic import (
    EvenPrimeError,
    GaussianInt,
    NonIntegralEntryError,
    OdElem,
    QuadElem,
    gaussian_hom_f,
    is_integral,
    is_rational_square,
    reduce_mod_p,
    tau,
)
from .vol3 import compute_invariant_form_J, omega_at_zero, omega_specialized
from .words import EMPTY_WORD, GroupWord, RepGenerators, evaluate_word, expand_to_orbifold


class PrimeDoesNotDivideError(ValueError):
    """The chosen prime must divide the Pell value t_n."""


class CapExceededError(RuntimeError):
    """Group enumeration exceeded its element cap (image may be infinite)."""


class DiagramError(RuntimeError):
    """The commuting-diagram precondition does not hold."""


# ---------------------------------------------------------------------------
# matrices over Z[i]


def gaussian_inverse(m: Matrix) -> Matrix:
    """Exact inverse of an invertible matrix over Z[i].

    Works through the rational 2n x 2n real embedding, then checks the
    result is integral; matrices here have unit determinant, so it is.
    """
    n = m.rows
    big = []
    for i in range(n):
        top = []
        bot = []
        for j in range(n):
            e = m.entries[i][j]
            top.extend((Fraction(e.re), Fraction(-e.im)))
            bot.extend((Fraction(e.im), Fraction(e.re)))
        big.append(top)
        big.append(bot)
    inv = inverse(Matrix(QQ, big))
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            re = inv.entries[2 * i][2 * j]
            im = inv.entries[2 * i + 1][2 * j]
            if re.denominator != 1 or im.denominator != 1:
                raise NonIntegralEntryError("inverse is not integral over Z[i]")
            row.append(GaussianInt(int(re), int(im)))
        out.append(row)
    result = Matrix(GAUSSIAN, out)
    if not (m * result).is_identity():
        raise ArithmeticError("inverse verification failed")
    return result


# ---------------------------------------------------------------------------
# SU membership


@dataclass(frozen=True)
class SUContext:
    """A specialized Hermitian form defining SU(J; O_d, tau) in dimension m."""

    d: int
    form: HermitianForm
    m: int

    def __post_init__(self):
        if not det(self.form.matrix):
            raise ValueError("the form must be invertible")


@lru_cache(maxsize=None)
def su_context(d: int, n: int) -> SUContext:
    """SU context for the canonical form specialized at the n-th Pell value."""
    sol = pell_solution(d, n)
    spec = Specialization.from_pell(sol.t, sol.y, d)
    j = compute_invariant_form_J()
    dom = quad_field(d)
    mat = j.matrix.map_entries(lambda e: specialize(e, spec), dom)
    return SUContext(d=d, form=HermitianForm(mat, tau, "sqrt->-sqrt"), m=mat.rows)


def su_membership(m: Matrix, ctx: SUContext) -> bool:
    """det(M) = 1 and M* J M = J, with all entries integral.

    Non-integral entries are an error, not a False: the group is defined
    over the ring of integers.
    """
    if m.rows != ctx.m or m.cols != ctx.m:
        return False
    for row in m.entries:
        for e in row:
            if not is_integral(e):
                raise NonIntegralEntryError(f"entry {e!r} is not in O_{ctx.d}")
    if det(m) != m.domain.one:
        return False
    return m.star(tau) * ctx.form.matrix * m == ctx.form.matrix


# ---------------------------------------------------------------------------
# reduction mod p


def reduce_matrix_mod_p(m: Matrix, p: int) -> Matrix:
    """Entrywise reduction of an integral matrix over Q(sqrt d) mod p."""
    dom = None
    out = []
    for row in m.entries:
        orow = []
        for e in row:
            r = reduce_mod_p(OdElem.from_quad(e), p)
            orow.append(r)
            if dom is None:
                dom = residue_ring(p, r.d)
        out.append(orow)
    return Matrix(dom, out)


def reduce_rep_mod_p(rep: RepGenerators, p: int) -> RepGenerators:
    """Reduce every generator image mod p; inherits verified orders."""
    if p == 2:
        raise EvenPrimeError("reduction mod 2 is not supported")
    images = {sym: reduce_matrix_mod_p(mat, p) for sym, mat in rep.images.items()}
    # determinants reduce along the ring homomorphism, so skip re-verification
    return RepGenerators(images, verify=False, orders=rep.orders)


@lru_cache(maxsize=None)
def _omega_residue(d: int, n: int, p: int) -> RepGenerators:
    sol = pell_solution(d, n)
    spec = Specialization.from_pell(sol.t, sol.y, d)
    return reduce_rep_mod_p(omega_specialized(spec), p)


@lru_cache(maxsize=None)
def diagram_commutes(d: int, n: int, p: int) -> bool:
    """Generator-level commutation of specialization-then-reduce squares.

    Checks, for g in {u, c}, that mapping the Gaussian specialization of g
    through i -> y_n*sqrt(d) in the residue ring agrees entrywise with
    reducing the Pell specialization mod p; the well-definedness condition
    d y_n^2 = -1 mod p is validated along the way.
    """
    if p == 2:
        raise EvenPrimeError("the congruence level must be odd")
    sol = pell_solution(d, n)
    if sol.t % p != 0:
        raise PrimeDoesNotDivideError(f"{p} does not divide t_{n} = {sol.t}")
    if (d * sol.y * sol.y + 1) % p != 0:
        return False
    zero_rep = omega_at_zero()
    residue_rep = _omega_residue(d, n, p)
    dom = residue_ring(p, d)
    for sym in ("u", "c"):
        pushed = zero_rep.image(sym).map_entries(
            lambda z: gaussian_hom_f(z, sol.y % p, d, p), dom
        )
        if pushed != residue_rep.image(sym):
            return False
    return True


def kernel_membership(w: GroupWord, d: int, n: int, p: int) -> bool:
    """Whether the reduced specialized image of the word is the identity.

    Precondition: diagram_commutes(d, n, p); its failure modes propagate.
    Words over {a, b} are expanded through the orbifold generators first.
    """
    if not diagram_commutes(d, n, p):
        raise DiagramError(f"diagram does not commute for (d, n, p) = {(d, n, p)}")
    rep = _omega_residue(d, n, p)
    word = expand_to_orbifold(w)
    return evaluate_word(word, rep).is_identity()


# ---------------------------------------------------------------------------
# the finite image at t = 0 and Schreier generators of its kernel


@lru_cache(maxsize=1)
def omega_zero_manifold_generators() -> RepGenerators:
    """Images of the manifold generators a, b at the Gaussian point."""
    om0 = omega_at_zero()
    a = evaluate_word(expand_to_orbifold(GroupWord.parse("a")), om0)
    b = evaluate_word(expand_to_orbifold(GroupWord.parse("b")), om0)
    return RepGenerators({"a": a, "b": b})


@dataclass(frozen=True)
class FiniteImage:
    """A finite matrix group with a shortest-word transversal.

    elements maps the canonical matrix key to (transversal word, matrix).
    """

    order: int
    generator_labels: tuple
    elements: dict

    def transversal(self) -> list[GroupWord]:
        return [word for word, _ in self.elements.values()]

    def word_for(self, m: Matrix) -> GroupWord:
        return self.elements[m.key()][0]

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "generators": list(self.generator_labels),
            "transversal": [repr(w) for w in self.transversal()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def enumerate_image(rep: RepGenerators, cap: int = 10**6) -> FiniteImage:
    """Breadth-first closure of the group generated by the images.

    Expands by right multiplication with generators and their inverses, so
    the stored word for each element is shortest (ties broken by generator
    order).  Raises CapExceededError beyond cap elements, which signals a
    possibly infinite image.
    """
    labels = tuple(sorted(rep.images))
    steps = []
    for sym in labels:
        steps.append(((sym, 1), rep.image(sym)))
        steps.append(((sym, -1), rep.inverse_image(sym)))
    ident = Matrix.identity(rep.domain, rep.dim)
    elements = {ident.key(): (EMPTY_WORD, ident)}
    queue = deque([ident])
    while queue:
        current = queue.popleft()
        word = elements[current.key()][0]
        for letter, mat in steps:
            nxt = current * mat
            key = nxt.key()
            if key not in elements:
                if len(elements) >= cap:
                    raise CapExceededError(f"more than {cap} elements generated")
                elements[key] = (GroupWord((*word.letters, letter)), nxt)
                queue.append(nxt)
    return FiniteImage(
        order=len(elements), generator_labels=labels, elements=elements
    )


def schreier_kernel_generators(image: FiniteImage, rep: RepGenerators) -> list[GroupWord]:
    """Schreier generators r g (transversal(r g))^-1 of the kernel.

    Every returned word is freely reduced, nontrivial, and evaluates to the
    identity matrix under the representation (checked).
    """
    steps = []
    for sym in image.generator_labels:
        steps.append(((sym, 1), rep.image(sym)))
        steps.append(((sym, -1), rep.inverse_image(sym)))
    out = []
    seen = set()
    for word, mat in image.elements.values():
        for letter, step in steps:
            target = mat * step
            target_word = image.word_for(target)
            schreier = GroupWord((*word.letters, letter)) * target_word.inverse()
            if not schreier.letters or schreier.letters in seen:
                continue
            seen.add(schreier.letters)
            if not evaluate_word(schreier, rep).is_identity():
                raise ArithmeticError(f"Schreier word {schreier!r} is not in the kernel")
            out.append(schreier)
    return out


# ---------------------------------------------------------------------------
# commensurability class and the non-uniformity witness


def commensurability_class(form: HermitianForm):
    """(rank, determinant, square witness) of a form over Q(sqrt d).

    The witness certifies SU-equivalence to forms of square determinant; a
    missing witness is inconclusive because only the sufficient rational
    square test is implemented.
    """
    r = rank(form.matrix)
    d = det(form.matrix)
    if isinstance(d, QuadElem):
        if d.b != 0:
            raise ValueError("determinant of a Hermitian form must be rational")
        value = d.a
    else:
        value = Fraction(d)
    return r, d, is_rational_square(value)


def compare_forms(f1: HermitianForm, f2: HermitianForm) -> str:
    """Three-valued comparison: equivalent / inconclusive / distinct-rank."""
    r1, d1, _ = commensurability_class(f1)
    r2, d2, _ = commensurability_class(f2)
    if r1 != r2:
        return "distinct-rank"
    v1 = d1.a if isinstance(d1, QuadElem) else Fraction(d1)
    v2 = d2.a if isinstance(d2, QuadElem) else Fraction(d2)
    if v2 == 0:
        return "inconclusive"
    if is_rational_square(v1 / v2) is not None:
        return "equivalent"
    return "inconclusive"


def isotropic_witness(c: QuadElem, m: int) -> list[QuadElem]:
    """The vector (1, 1, 0, ..., 0) annihilating diag(1, -1, -c, 1, ..., 1).

    This is the standard non-uniformity certificate; the value is checked
    exactly before returning.
    """
    if m < 3:
        raise ValueError("need dimension at least 3")
    dom = quad_field(c.d)
    diag = [dom.one, -dom.one, -c] + [dom.one] * (m - 3)
    form = HermitianForm(Matrix.diagonal(dom, diag), tau, "sqrt->-sqrt")
    x = [dom.one, dom.one] + [dom.zero] * (m - 2)
    value = form.apply(x, x)
    if value:
        raise ArithmeticError("isotropy check failed; the witness is not isotropic")
    return x
