"""Representations of the vol3 orbifold group and the pipelines over them.

The generator matrices live in data/generators_v1.txt (checksummed, parsed
once).  Everything downstream is exact: relator verification, the invariant
Hermitian forms, conjugacy of the 8-dimensional representation to two copies
of the 4-dimensional one, and the 16-dimensional left-regular construction.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .funcfield import (
    TOWER,
    RatFunc,
    Specialization,
    TowerContext,
    TowerElem,
    evaluate_at,
    numeric_tower,
    ratfunc_sqrt,
    specialize,
    tau_s,
)
from .linalg import (
    GAUSSIAN,
    HermitianForm,
    Matrix,
    det,
    inverse,
    quad_field,
    solve_conjugator,
    solve_invariant_forms,
    tower_field,
)
from .quadratic import GaussianInt
from .words import (
    GroupWord,
    RepGenerators,
    evaluate_word,
    expand_to_orbifold,
    vol3_relators,
)

GENERATORS_SHA256 = "65614e3e155d2c3089a5f188ce76850beb64c05615aff4ecac821df20e011f82"

TOWER_DOMAIN = tower_field(TOWER)


class SolverFailedError(RuntimeError):
    """The invariant-form solution space does not have the expected dimension."""


class NoConjugatorFoundError(RuntimeError):
    """No invertible intertwiner exists between the given representations."""


class SearchExhaustedError(RuntimeError):
    """The word search hit its length bound before spanning the target space."""


class BasisDegenerateError(RuntimeError):
    """The chosen words do not give a basis at the reference parameter."""


# ---------------------------------------------------------------------------
# constants file: tokenizer, parser, loader


def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch in "tsw+-*/^()":
            tokens.append(ch)
            i += 1
        else:
            raise ValueError(f"unexpected character {ch!r} in matrix entry")
    return tokens


class _ExprParser:
    """Recursive descent for +, -, *, /, ^ over {integers, t, s, w}."""

    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> TowerElem:
        value = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing tokens near {self.peek()!r}")
        return value

    def expr(self) -> TowerElem:
        if self.peek() == "-":
            self.take()
            value = -self.term()
        else:
            value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> TowerElem:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self) -> TowerElem:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        value = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.take()
            if exp is None or not exp.isdigit():
                raise ValueError("exponent must be a plain integer")
            value = value ** int(exp)
        return value

    def atom(self) -> TowerElem:
        tok = self.take()
        if tok is None:
            raise ValueError("unexpected end of entry")
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise ValueError("unbalanced parentheses")
            return value
        if tok == "t":
            return TOWER.scalar(RatFunc.of((0, 1)))
        if tok == "s":
            return TOWER.s
        if tok == "w":
            return TOWER.w
        if tok.isdigit():
            return TOWER.scalar(RatFunc.of(int(tok)))
        raise ValueError(f"unexpected token {tok!r}")


def parse_entry(text: str) -> TowerElem:
    return _ExprParser(_tokenize(text)).parse()


@lru_cache(maxsize=1)
def _load_blocks() -> dict[str, Matrix]:
    raw = resources.files("vol3verify").joinpath("data/generators_v1.txt").read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != GENERATORS_SHA256:
        raise ValueError(
            "generator constants file failed its checksum; refusing to load"
        )
    blocks: dict[str, Matrix] = {}
    name = None
    dim = 0
    rows: list[list[TowerElem]] = []
    version = None
    for line in raw.decode("utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("version"):
            version = int(line.split()[1])
            continue
        if line.startswith("["):
            if name is not None:
                blocks[name] = Matrix(TOWER_DOMAIN, rows)
            header = line.strip("[]").split()
            name, dim = header[0], int(header[1])
            rows = []
            continue
        entries = [parse_entry(cell) for cell in line.split("|")]
        if len(entries) != dim:
            raise ValueError(f"row of {name} has {len(entries)} entries, wants {dim}")
        rows.append(entries)
    if name is not None:
        blocks[name] = Matrix(TOWER_DOMAIN, rows)
    if version != 1:
        raise ValueError(f"unsupported constants version {version!r}")
    for key, mat in blocks.items():
        if mat.rows != mat.cols:
            raise ValueError(f"block {key} is not square")
    return blocks


# ---------------------------------------------------------------------------
# the representations themselves


@lru_cache(maxsize=1)
def rho_generators() -> RepGenerators:
    """The 4-dimensional representation over Q(t)[s, w]."""
    blocks = _load_blocks()
    return RepGenerators(
        {"u": blocks["rho.u"], "c": blocks["rho.c"]}, orders={"u": 4, "c": 2}
    )


@lru_cache(maxsize=1)
def omega_generators() -> RepGenerators:
    """The 8-dimensional representation with entries in Z[t, s]."""
    blocks = _load_blocks()
    return RepGenerators(
        {"u": blocks["omega.u"], "c": blocks["omega.c"]}, orders={"u": 4, "c": 2}
    )


@lru_cache(maxsize=1)
def m_form() -> HermitianForm:
    """The diagonal form preserved by the 4-dimensional representation."""
    return HermitianForm(_load_blocks()["form.m"], tau_s, "s->-s")


def verify_presentation(rep: RepGenerators) -> list[tuple[str, bool]]:
    """Check u^4, c^2 and both manifold relators map to the identity.

    Purely symbolic: exact equality of matrices over the representation's
    coefficient domain.  Failures come back as False entries, not errors.
    """
    ident = Matrix.identity(rep.domain, rep.dim)
    checks = [
        ("u^4", rep.image("u").power(4) == ident),
        ("c^2", rep.image("c").power(2) == ident),
    ]
    for rel in vol3_relators():
        word = expand_to_orbifold(rel)
        checks.append((repr(rel), evaluate_word(word, rep) == ident))
    return checks


# ---------------------------------------------------------------------------
# invariant forms

# determinant value reached by one known choice of the four free variables:
# 16 (3 - 4 t^2)^4 / (1 - 4 t^2)^2
REFERENCE_DET_J = (
    RatFunc.of((3, 0, -4)) ** 4 * 16 / (RatFunc.of((1, 0, -4)) ** 2)
)


@dataclass(frozen=True)
class InvariantFormReport:
    dimension: int
    form: HermitianForm
    candidate_index: int
    determinant: RatFunc
    determinant_sqrt: RatFunc | None
    reference_ratio_is_square: bool


def _candidate_combinations(n: int):
    """Deterministic ladder of coefficient vectors over a basis of size n."""
    for i in range(n):
        coeffs = [0] * n
        coeffs[i] = 1
        yield coeffs
    for k in range(2, n + 1):
        yield [1] * k + [0] * (n - k)
    for i in range(1, n):
        coeffs = [1] * n
        coeffs[i] = 2
        yield coeffs


@lru_cache(maxsize=1)
def invariant_form_report() -> InvariantFormReport:
    """Solve for the family of forms preserved by the 8-dim representation.

    The solution space must be 4-dimensional; the canonical representative
    takes the first free variable (in lexicographic pivot order) equal to 1
    and the others 0, falling back down a deterministic ladder if that
    choice happens to be singular.
    """
    omega = omega_generators()
    gens = [omega.image("u"), omega.image("c")]
    forms = solve_invariant_forms(gens, tau_s, "s->-s")
    if len(forms) != 4:
        raise SolverFailedError(
            f"expected a 4-dimensional space of invariant forms, got {len(forms)}"
        )
    for idx, coeffs in enumerate(_candidate_combinations(len(forms))):
        mat = None
        for c, f in zip(coeffs, forms):
            if not c:
                continue
            term = f.matrix if c == 1 else f.matrix * TOWER.scalar(RatFunc.of(c))
            mat = term if mat is None else mat + term
        candidate = mat
        d = det(candidate)
        if not d:
            continue
        if not d.is_base():
            raise SolverFailedError("determinant not in Q(t); unexpected")
        det_rf = d.c00
        ratio = det_rf / REFERENCE_DET_J
        return InvariantFormReport(
            dimension=len(forms),
            form=HermitianForm(candidate, tau_s, "s->-s"),
            candidate_index=idx,
            determinant=det_rf,
            determinant_sqrt=ratfunc_sqrt(det_rf),
            reference_ratio_is_square=ratfunc_sqrt(ratio) is not None,
        )
    raise SolverFailedError("no candidate in the solution space is invertible")


def compute_invariant_form_J() -> HermitianForm:
    """The canonical invariant form J_t for the 8-dim representation."""
    return invariant_form_report().form


def rho_invariant_forms() -> list[HermitianForm]:
    """Solution space of invariant forms for the 4-dim representation."""
    rho = rho_generators()
    return solve_invariant_forms([rho.image("u"), rho.image("c")], tau_s, "s->-s")


# ---------------------------------------------------------------------------
# conjugacy to the doubled 4-dimensional representation


def double_block(m: Matrix) -> Matrix:
    """Block diagonal sum m + m of two copies of a square matrix."""
    n = m.rows
    z = m.domain.zero
    out = []
    for i in range(2 * n):
        row = [z] * (2 * n)
        block = m.entries[i % n]
        off = 0 if i < n else n
        for j in range(n):
            row[off + j] = block[j]
        out.append(row)
    return Matrix(m.domain, out)


def verify_double_conjugacy(seed: int = 0) -> Matrix:
    """Invertible P with P omega(g) = (rho + rho)(g) P for g in {u, c}.

    The conjugator is recomputed from scratch by solving the intertwiner
    system exactly, then re-verified by multiplication.
    """
    omega = omega_generators()
    rho = rho_generators()
    a_gens = [omega.image("u"), omega.image("c")]
    b_gens = [double_block(rho.image("u")), double_block(rho.image("c"))]
    p = solve_conjugator(a_gens, b_gens, seed=seed)
    if p is None:
        raise NoConjugatorFoundError(
            "no invertible intertwiner between the 8-dim representation "
            "and the doubled 4-dim representation"
        )
    for a, b in zip(a_gens, b_gens):
        if p * a != b * p:
            raise NoConjugatorFoundError("intertwiner failed re-verification")
    return p


# ---------------------------------------------------------------------------
# spanning words and the left-regular construction

REFERENCE_FIBER_T = 2

_ALPHABET = (("u", 1), ("u", -1), ("c", 1))


def _fiber_images(t0: int):
    ctx = numeric_tower(t0)
    dom = tower_field(ctx)
    rho = rho_generators()
    images = {}
    for sym in ("u", "c"):
        m = rho.image(sym).map_entries(lambda e: evaluate_at(e, t0, ctx), dom)
        images[(sym, 1)] = m
        images[(sym, -1)] = inverse(m)
    return dom, images


def search_spanning_words(max_word_length: int = 10) -> list[GroupWord]:
    """Greedy breadth-first hunt for 16 words spanning all 4x4 matrices.

    Words over {u, u^-1, c} are visited in length order (lexicographic
    within a length, with u < u^-1 < c); a word is kept when its image at
    the reference fiber t = 2 (s^2 = 3, w^2 = 6) enlarges the span of the
    vectorized images.  The empty word comes first.
    """
    dom, images = _fiber_images(REFERENCE_FIBER_T)
    n = 4

    echelon: list[tuple[int, list]] = []  # (pivot index, normalized vector)

    def extends_span(mat: Matrix) -> bool:
        v = [mat.entries[i][j] for i in range(n) for j in range(n)]
        for pivot, row in echelon:
            f = v[pivot]
            if f:
                for k in range(pivot, n * n):
                    if row[k]:
                        v[k] = v[k] - f * row[k]
        for k in range(n * n):
            if v[k]:
                inv = dom.div(dom.one, v[k])
                v = [inv * x if x else x for x in v]
                echelon.append((k, v))
                echelon.sort(key=lambda pr: pr[0])
                return True
        return False

    ident = Matrix.identity(dom, n)
    accepted: list[GroupWord] = []
    frontier: list[tuple[tuple, Matrix]] = [((), ident)]
    if extends_span(ident):
        accepted.append(GroupWord())
    length = 0
    while len(accepted) < 16:
        length += 1
        if length > max_word_length:
            raise SearchExhaustedError(
                f"span rank stalled at {len(accepted)} with words up to "
                f"length {max_word_length}"
            )
        next_frontier = []
        for letters, mat in frontier:
            for sym, e in _ALPHABET:
                if letters and letters[-1] == (sym, -e):
                    continue
                child = letters + ((sym, e),)
                img = mat * images[(sym, e)]
                next_frontier.append((child, img))
                if len(accepted) < 16 and extends_span(img):
                    accepted.append(GroupWord(child))
        frontier = next_frontier
    return accepted


def spanning_certificate(words) -> bool:
    """Exact nonvanishing of the 16x16 determinant of vectorized images at t=2."""
    ctx = numeric_tower(REFERENCE_FIBER_T)
    dom = tower_field(ctx)
    rho = rho_generators()
    cols = []
    for w in words:
        img = evaluate_word(w, rho).map_entries(
            lambda e: evaluate_at(e, REFERENCE_FIBER_T, ctx), dom
        )
        cols.append([img.entries[i][j] for i in range(4) for j in range(4)])
    v = Matrix(dom, list(zip(*cols)))
    return bool(det(v))


@dataclass(frozen=True)
class LeftRegularReport:
    dim: int
    entries_integral: bool
    presentation: list
    traces: dict


def _entry_in_integer_s_ring(e: TowerElem) -> bool:
    """True when the entry lies in Z[t, s]."""
    if not e.in_s_subfield():
        return False
    for part in (e.c00, e.c10):
        if part and not part.is_integer_polynomial():
            return False
    return True


def build_left_regular(words) -> tuple[RepGenerators, LeftRegularReport]:
    """Left-multiplication representation on the span of 16 chosen images.

    Structure constants are solved exactly over the tower; the generator
    images are then checked against the presentation.  Whether the entries
    land in Z[t, s] depends on the word choice, so it is reported rather
    than asserted.
    """
    if len(words) != 16:
        raise ValueError("the left-regular construction needs exactly 16 words")
    rho = rho_generators()
    base = [evaluate_word(w, rho) for w in words]
    n = 4

    def vec(m: Matrix) -> list:
        return [m.entries[i][j] for i in range(n) for j in range(n)]

    v_cols = [vec(m) for m in base]
    v = Matrix(TOWER_DOMAIN, list(zip(*v_cols)))
    rhs_cols = []
    for sym in ("u", "c"):
        g = rho.image(sym)
        for b in base:
            rhs_cols.append(vec(g * b))
    rhs = Matrix(TOWER_DOMAIN, list(zip(*rhs_cols)))
    from .linalg import solve_right

    try:
        sol = solve_right(v, rhs)
    except ZeroDivisionError:
        raise BasisDegenerateError("chosen words are dependent over the tower")
    eta_u = Matrix(TOWER_DOMAIN, [row[:16] for row in sol.entries])
    eta_c = Matrix(TOWER_DOMAIN, [row[16:] for row in sol.entries])
    rep = RepGenerators({"u": eta_u, "c": eta_c}, orders={"u": 4, "c": 2})
    presentation = verify_presentation(rep)
    integral = all(
        _entry_in_integer_s_ring(e) for m in (eta_u, eta_c) for row in m.entries for e in row
    )
    traces = {
        "u": repr(eta_u.trace()),
        "c": repr(eta_c.trace()),
    }
    report = LeftRegularReport(
        dim=16,
        entries_integral=integral,
        presentation=presentation,
        traces=traces,
    )
    return rep, report


# ---------------------------------------------------------------------------
# specializations of the 8-dimensional representation


def omega_specialized(spec: Specialization) -> RepGenerators:
    """The 8-dim representation with t at a Pell value, over Q(sqrt d)."""
    omega = omega_generators()
    dom = quad_field(spec.d)
    images = {
        sym: omega.image(sym).map_entries(lambda e: specialize(e, spec), dom)
        for sym in ("u", "c")
    }
    return RepGenerators(images, orders={"u": 4, "c": 2})


def m_form_at_one() -> Matrix:
    """The diagonal form at t = 1 (s = 0, w = sqrt(3)), over Q(sqrt 3).

    At this point the s-involution is trivial and the signature of the
    diagonal is the classical signature of the preserved bilinear form.
    """
    from .quadratic import QuadElem

    spec = Specialization(1, 3, QuadElem(0, 0, 3), QuadElem(0, 1, 3))
    return m_form().matrix.map_entries(
        lambda e: specialize(e, spec), quad_field(3)
    )


@lru_cache(maxsize=1)
def omega_at_zero() -> RepGenerators:
    """The specialization t = 0, s -> i, landing in SL(8, Z[i])."""
    omega = omega_generators()

    def to_gaussian(e: TowerElem) -> GaussianInt:
        if not e.in_s_subfield():
            raise ValueError("entry involves w; not defined at the Gaussian point")
        re = e.c00.eval_at(0)
        im = e.c10.eval_at(0)
        if re.denominator != 1 or im.denominator != 1:
            raise ValueError("entry is not integral at t = 0")
        return GaussianInt(int(re), int(im))

    images = {
        sym: omega.image(sym).map_entries(to_gaussian, GAUSSIAN)
        for sym in ("u", "c")
    }
    return RepGenerators(images, orders={"u": 4, "c": 2})
