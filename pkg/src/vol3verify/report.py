"""Suite orchestration and report emission.

Claims are registered declaratively as (id, description, status, details)
records so a report doubles as a verification matrix.  Statuses: "pass" and
"fail" for properties the chain asserts, "recorded" for quantities that are
measured but deliberately not pinned (basis-dependent integrality, image
orders not fixed by the construction, selection-rule table agreement).

Reports are deterministic byte-for-byte for a fixed config and seed; wall
clock timing is kept on the in-memory object only and never emitted.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import bounds, congruence, pell, vol3
from .funcfield import Specialization
from .linalg import det, signature_of_diagonal
from .quadratic import QuadElem, is_rational_square
from .words import GroupWord

SUITES = (
    "transcription",
    "forms",
    "conjugacy",
    "pell",
    "primes",
    "image",
    "congruence",
    "systole",
    "leftregular",
)

FORMATS = ("json", "csv", "markdown")

SCHEMA_VERSION = 1

DIMENSION = 8


@dataclass(frozen=True)
class RunConfig:
    d: int = 3
    depth: int = 5
    rule: str = "largest-primitive"
    suites: tuple = SUITES
    fmt: str = "json"
    seed: int = 42
    cap: int = 10**6

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        if self.rule not in pell.SELECTION_RULES:
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}")
        for s in self.suites:
            if s not in SUITES:
                raise ValueError(f"unknown suite {s!r}")

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "depth": self.depth,
            "rule": self.rule,
            "suites": list(self.suites),
            "format": self.fmt,
            "seed": self.seed,
            "cap": self.cap,
        }


@dataclass(frozen=True)
class ClaimRecord:
    claim_id: str
    description: str
    status: str  # pass | fail | recorded
    details: str = ""


@dataclass(frozen=True)
class TableRow:
    n: int
    t: int
    y: int
    p: int
    primitive_primes: tuple
    diagram_ok: bool | None
    kernel_ok: bool | None
    systole_bound: float


@dataclass
class VerificationReport:
    config: RunConfig
    claims: list = field(default_factory=list)
    table: list = field(default_factory=list)
    elapsed: float = 0.0  # in-memory only; never emitted

    def add(self, claim_id: str, description: str, ok: bool, details: str = ""):
        self.claims.append(
            ClaimRecord(claim_id, description, "pass" if ok else "fail", details)
        )

    def record(self, claim_id: str, description: str, details: str):
        self.claims.append(ClaimRecord(claim_id, description, "recorded", details))

    def failed(self) -> list:
        return [c for c in self.claims if c.status == "fail"]

    def ok(self) -> bool:
        return not self.failed()


def _fmt_bound(value: float) -> str:
    return f"{value:.12g}"


# ---------------------------------------------------------------------------
# individual suites


def _suite_transcription(report: VerificationReport):
    for name, rep in (("omega", vol3.omega_generators()), ("rho", vol3.rho_generators())):
        for relation, ok in vol3.verify_presentation(rep):
            report.add(
                f"transcription.{name}.{relation}",
                f"{relation} maps to the identity under the {name} generators",
                ok,
            )
    m = vol3.m_form()
    rho = vol3.rho_generators()
    for sym in ("u", "c"):
        report.add(
            f"transcription.m-form.{sym}",
            f"rho({sym}) preserves the diagonal form",
            m.preserved_by(rho.image(sym)),
        )
    sig = signature_of_diagonal(vol3.m_form_at_one())
    report.add(
        "transcription.m-form.signature-at-1",
        "the diagonal form at t = 1 has signature (3, 1)",
        sig == (3, 1),
        details=f"signature={sig}",
    )


def _suite_forms(report: VerificationReport):
    inv = vol3.invariant_form_report()
    report.add(
        "forms.omega.dimension",
        "the space of forms preserved by the 8-dim generators is 4-dimensional",
        inv.dimension == 4,
        details=f"dimension={inv.dimension}",
    )
    report.add(
        "forms.omega.det-nonzero-square",
        "the canonical form has nonzero determinant, a square in Q(t)",
        bool(inv.determinant) and inv.determinant_sqrt is not None,
        details=f"candidate_index={inv.candidate_index}",
    )
    report.record(
        "forms.omega.det-ratio-to-reference",
        "ratio of det to the reference determinant is a square in Q(t)",
        details=f"is_square={inv.reference_ratio_is_square}",
    )
    rho_forms = vol3.rho_invariant_forms()
    report.add(
        "forms.rho.dimension",
        "the space of forms preserved by the 4-dim generators is 1-dimensional",
        len(rho_forms) == 1,
        details=f"dimension={len(rho_forms)}",
    )
    if rho_forms:
        ok = _is_scalar_multiple(rho_forms[0].matrix, vol3.m_form().matrix)
        report.add(
            "forms.rho.matches-diagonal-form",
            "the solved form is a scalar multiple of the stated diagonal form",
            ok,
        )


def _is_scalar_multiple(a, b) -> bool:
    lam = None
    for i in range(a.rows):
        for j in range(a.cols):
            x, y = a.entries[i][j], b.entries[i][j]
            if bool(x) != bool(y):
                return False
            if x:
                r = x / y
                if lam is None:
                    lam = r
                elif r != lam:
                    return False
    return lam is not None


def _suite_conjugacy(report: VerificationReport, seed: int):
    try:
        p = vol3.verify_double_conjugacy(seed=seed)
        ok = bool(det(p))
        details = "invertible intertwiner found and re-verified"
    except vol3.NoConjugatorFoundError as exc:
        ok = False
        details = str(exc)
    report.add(
        "conjugacy.doubled-4dim",
        "the 8-dim representation is conjugate to two copies of the 4-dim one",
        ok,
        details=details,
    )


def _suite_pell(report: VerificationReport, d: int, depth: int):
    sols = pell.pell_sequence(d, depth)
    ok = all(s.t * s.t - d * s.y * s.y == 1 for s in sols)
    report.add(
        "pell.identity",
        f"t_n^2 - {d} y_n^2 = 1 for n <= {depth}",
        ok,
    )
    if depth >= 2:
        f = pell.pell_fundamental(d)
        s = [2 * x.t for x in sols]
        rec = all(
            s[i + 1] == 2 * f.t * s[i] - (s[i - 1] if i else 2)
            for i in range(0, depth - 1)
        )
        report.add(
            "pell.recurrence",
            "2 t_n satisfies the second-order recurrence of the unit powers",
            rec,
        )
    report.record(
        "pell.solutions",
        f"Pell solutions for d = {d}",
        details="; ".join(f"n={s.n}: ({s.t}, {s.y})" for s in sols),
    )


def _suite_primes(report: VerificationReport, d: int, depth: int, rule: str):
    report.add(
        "primes.lucas-pair",
        "the unit and its inverse form a Lucas pair",
        pell.lucas_pair_check(d),
    )
    selection = pell.select_prime_sequence(d, depth, rule)
    increasing = all(
        a.p < b.p for a, b in zip(selection.rows, selection.rows[1:])
    )
    usable = all(
        r.p % 2 == 1 and r.t % r.p == 0 and r.p in r.primitive_primes
        for r in selection.rows
    )
    report.add(
        "primes.selected-usable",
        "each selected prime is odd, primitive, and divides t_n",
        usable,
        details=f"primes={[r.p for r in selection.rows]}",
    )
    report.add(
        "primes.selected-increasing",
        "the selected prime sequence is strictly increasing",
        increasing,
    )
    if selection.skipped:
        report.record(
            "primes.skipped",
            "indices without a usable prime",
            details="; ".join(f"n={n}: {reason}" for n, reason in selection.skipped),
        )
    table = pell.KNOWN_PRIME_TABLE.get(d)
    if table:
        missing = []
        for n in range(1, depth + 1):
            expected = table.get(n)
            if expected is None:
                continue
            rec = pell.primitive_prime_divisors(d, n)
            if expected not in rec.primitive_primes:
                missing.append((n, expected))
        report.add(
            "primes.table-membership",
            "every tabulated prime lies in the computed primitive set",
            not missing,
            details=f"missing={missing}" if missing else "",
        )
        agree = [
            (r.n, r.p, table.get(r.n)) for r in selection.rows if table.get(r.n) != r.p
        ]
        report.record(
            "primes.table-agreement",
            f"rule {rule!r} vs tabulated values",
            details=(
                "full agreement" if not agree else
                "; ".join(f"n={n}: rule={p} table={q}" for n, p, q in agree)
            ),
        )


def _suite_image(report: VerificationReport, cap: int):
    rep = congruence.omega_zero_manifold_generators()
    image = congruence.enumerate_image(rep, cap=cap)
    report.add(
        "image.order",
        "the manifold group image at the Gaussian point has order 320",
        image.order == 320,
        details=f"order={image.order}",
    )
    orb = congruence.enumerate_image(vol3.omega_at_zero(), cap=cap)
    report.record(
        "image.orbifold-order",
        "order of the orbifold group image at the Gaussian point",
        details=f"order={orb.order}",
    )
    schreier = congruence.schreier_kernel_generators(image, rep)
    report.add(
        "image.schreier-in-kernel",
        "every Schreier generator evaluates to the identity at the Gaussian point",
        True,  # schreier_kernel_generators raises otherwise
        details=f"count={len(schreier)}",
    )
    return image, rep, schreier


def _suite_congruence(report: VerificationReport, d, depth, rule, schreier):
    selection = pell.select_prime_sequence(d, depth, rule)
    rows = []
    for r in selection.rows:
        n, p = r.n, r.p
        diagram_ok = congruence.diagram_commutes(d, n, p)
        report.add(
            f"congruence.n{n}.diagram",
            f"the reduction diagram commutes at (d={d}, n={n}, p={p})",
            diagram_ok,
        )
        pell_ok = (d * r.y * r.y + 1) % p == 0
        report.add(
            f"congruence.n{n}.residue-condition",
            f"d y_n^2 = -1 mod {p}",
            pell_ok,
        )
        sol = pell.pell_solution(d, n)
        spec = Specialization.from_pell(sol.t, sol.y, d)
        rep = vol3.omega_specialized(spec)
        ctx = congruence.su_context(d, n)
        su_ok = all(
            congruence.su_membership(rep.image(sym), ctx) for sym in ("u", "c")
        )
        report.add(
            f"congruence.n{n}.su-membership",
            f"specialized generators lie in SU(J; O_{d}) at n={n}",
            su_ok,
        )
        kernel_ok = None
        if diagram_ok and schreier is not None:
            kernel_ok = all(
                congruence.kernel_membership(w, d, n, p) for w in schreier
            )
            report.add(
                f"congruence.n{n}.kernel",
                f"all Schreier kernel generators reduce to the identity at level {p}",
                kernel_ok,
            )
        rows.append((r, diagram_ok, kernel_ok))
    ctxs = [congruence.su_context(d, r.n) for r in selection.rows]
    if ctxs:
        _, detval, witness = congruence.commensurability_class(ctxs[0].form)
        report.add(
            "congruence.form-square-class",
            "the specialized form has rational square determinant",
            witness is not None,
            details=f"det={detval!r}",
        )
        c = QuadElem(detval.a if isinstance(detval, QuadElem) else detval, 0, d)
        x = congruence.isotropic_witness(c, DIMENSION)
        report.add(
            "congruence.isotropy-witness",
            "(1, 1, 0, ..., 0) is isotropic for diag(1, -1, -det J, 1, ..., 1)",
            True,  # isotropic_witness raises otherwise
        )
    return rows


def _suite_systole(report: VerificationReport, d, depth, rule):
    table = bounds.systole_report(d, depth, rule, m=DIMENSION)
    grown = [r for r in table.rows if r.p > 2 * DIMENSION]
    increasing = all(
        a.bound.value < b.bound.value for a, b in zip(grown, grown[1:])
    )
    report.add(
        "systole.monotone",
        "bounds strictly increase along the emitted rows once p > 2m",
        increasing,
        details="; ".join(f"p={r.p}: {_fmt_bound(r.bound.value)}" for r in table.rows),
    )
    zeros_ok = all(
        (r.bound.value == 0.0) == (r.p < 2 * DIMENSION) for r in table.rows
    )
    report.add(
        "systole.zero-threshold",
        "the bound vanishes exactly for p below 2m",
        zeros_ok,
    )
    probe = bounds.congruence_systole_lower_bound(999999937, DIMENSION)
    report.record(
        "systole.bound-at-1e9",
        "bound at the largest prime below 10^9 (m = 8)",
        details=_fmt_bound(probe.value),
    )
    return table


def _suite_leftregular(report: VerificationReport):
    words = vol3.search_spanning_words()
    report.add(
        "leftregular.span-certificate",
        "the 16 chosen words span all 4x4 matrices at the reference fiber",
        vol3.spanning_certificate(words),
        details=" ".join(repr(w) for w in words),
    )
    _, lr = vol3.build_left_regular(words)
    report.add(
        "leftregular.homomorphism",
        "the 16-dim left-regular images satisfy the presentation",
        all(ok for _, ok in lr.presentation),
        details=str(lr.presentation),
    )
    report.record(
        "leftregular.integrality",
        "whether the 16-dim entries lie in Z[t, s] (depends on the word choice)",
        details=f"integral={lr.entries_integral}",
    )


# ---------------------------------------------------------------------------
# orchestration


def run_suite(config: RunConfig) -> VerificationReport:
    """Execute the selected suites in dependency order."""
    start = time.monotonic()
    report = VerificationReport(config=config)
    suites = set(config.suites)
    schreier = None
    if "transcription" in suites:
        _suite_transcription(report)
    if "forms" in suites:
        _suite_forms(report)
    if "conjugacy" in suites:
        _suite_conjugacy(report, config.seed)
    if config.depth > 0:
        if "pell" in suites:
            _suite_pell(report, config.d, config.depth)
        if "primes" in suites:
            _suite_primes(report, config.d, config.depth, config.rule)
    if "image" in suites:
        _, _, schreier = _suite_image(report, config.cap)
    cong_rows = []
    systable = None
    if config.depth > 0:
        if "congruence" in suites:
            cong_rows = _suite_congruence(
                report, config.d, config.depth, config.rule, schreier
            )
        if "systole" in suites:
            systable = _suite_systole(report, config.d, config.depth, config.rule)
    if "leftregular" in suites:
        _suite_leftregular(report)

    bounds_by_n = {}
    if systable is not None:
        bounds_by_n = {r.n: r.bound.value for r in systable.rows}
    diag_by_n = {r.n: (dg, kr) for (r, dg, kr) in cong_rows}
    selection = (
        pell.select_prime_sequence(config.d, config.depth, config.rule)
        if config.depth > 0
        else None
    )
    if selection is not None:
        for r in selection.rows:
            dg, kr = diag_by_n.get(r.n, (None, None))
            report.table.append(
                TableRow(
                    n=r.n,
                    t=r.t,
                    y=r.y,
                    p=r.p,
                    primitive_primes=r.primitive_primes,
                    diagram_ok=dg,
                    kernel_ok=kr,
                    systole_bound=bounds_by_n.get(
                        r.n, bounds.congruence_systole_lower_bound(r.p, DIMENSION).value
                    ),
                )
            )
    report.elapsed = time.monotonic() - start
    return report


# ---------------------------------------------------------------------------
# emission


def emit_report(report: VerificationReport, fmt: str | None = None) -> str:
    fmt = fmt or report.config.fmt
    if fmt == "json":
        return _emit_json(report)
    if fmt == "csv":
        return _emit_csv(report)
    if fmt == "markdown":
        return _emit_markdown(report)
    raise ValueError(f"unknown format {fmt!r}")


def _emit_json(report: VerificationReport) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "config": report.config.to_dict(),
        "claims": [
            {
                "id": c.claim_id,
                "description": c.description,
                "status": c.status,
                "details": c.details,
            }
            for c in report.claims
        ],
        "table": [
            {
                "n": r.n,
                "t_n": str(r.t),
                "y_n": str(r.y),
                "p_n": r.p,
                "primitive_primes": list(r.primitive_primes),
                "diagram_ok": r.diagram_ok,
                "kernel_ok": r.kernel_ok,
                "systole_bound": _fmt_bound(r.systole_bound),
            }
            for r in report.table
        ],
        "summary": {
            "pass": sum(c.status == "pass" for c in report.claims),
            "fail": sum(c.status == "fail" for c in report.claims),
            "recorded": sum(c.status == "recorded" for c in report.claims),
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "n",
            "t_n",
            "y_n",
            "p_n",
            "primitive_set",
            "diagram_ok",
            "kernel_ok",
            "systole_bound",
        ]
    )
    for r in report.table:
        writer.writerow(
            [
                r.n,
                r.t,
                r.y,
                r.p,
                " ".join(str(p) for p in r.primitive_primes),
                r.diagram_ok,
                r.kernel_ok,
                _fmt_bound(r.systole_bound),
            ]
        )
    return buf.getvalue()


def _emit_markdown(report: VerificationReport) -> str:
    lines = [
        f"# Verification report (d = {report.config.d}, depth = {report.config.depth})",
        "",
        "| n | u^n | t_n | p_n |",
        "|---|-----|-----|-----|",
    ]
    for r in report.table:
        lines.append(f"| {r.n} | {r.t} + {r.y} sqrt({report.config.d}) | {r.t} | {r.p} |")
    lines.append("")
    lines.append("| claim | status | details |")
    lines.append("|-------|--------|---------|")
    for c in report.claims:
        lines.append(f"| {c.claim_id} | {c.status} | {c.details} |")
    lines.append("")
    return "\n".join(lines)
