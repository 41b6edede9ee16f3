"""Command line interface.

Subcommands mirror the pipeline stages: `verify` runs suites and emits a
report (exit 1 on any failed claim), while `pell`, `primes`, `congruence`
and `systole` print the corresponding tables.  `report` is `verify` with
the output always written to a file.

The environment variable VOL3VERIFY_OUT names a default output directory
for relative --out paths.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import bounds, congruence, pell, report as report_mod
from .report import FORMATS, SUITES, RunConfig, emit_report, run_suite

OUT_ENV = "VOL3VERIFY_OUT"


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--d", type=int, default=3, help="square-free integer >= 2")
    parser.add_argument("--depth", type=int, default=5, help="number of Pell indices")
    parser.add_argument(
        "--rule",
        default="largest-primitive",
        choices=pell.SELECTION_RULES,
        help="how to pick one primitive prime per index",
    )
    parser.add_argument("--seed", type=int, default=42, help="seed for the conjugator search")
    parser.add_argument("--cap", type=int, default=10**6, help="group enumeration cap")
    parser.add_argument("--format", dest="fmt", default="json", choices=FORMATS)
    parser.add_argument("--out", default=None, help="output path (stdout if omitted)")


def _resolve_out(path: str | None) -> str | None:
    if path is None:
        return None
    if not os.path.isabs(path):
        base = os.environ.get(OUT_ENV)
        if base:
            return os.path.join(base, path)
    return path


def _write(text: str, out: str | None) -> None:
    target = _resolve_out(out)
    if target is None:
        sys.stdout.write(text)
    else:
        os.makedirs(os.path.dirname(target) or ".", exist_ok=True)
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)


def _config_from_args(args, suites=None) -> RunConfig:
    return RunConfig(
        d=args.d,
        depth=args.depth,
        rule=args.rule,
        suites=tuple(suites) if suites else SUITES,
        fmt=args.fmt,
        seed=args.seed,
        cap=args.cap,
    )


def cmd_verify(args) -> int:
    suites = tuple(args.suites.split(",")) if args.suites else None
    config = _config_from_args(args, suites)
    rep = run_suite(config)
    _write(emit_report(rep), args.out)
    if args.out is not None or rep.failed():
        summary = (
            f"{sum(c.status == 'pass' for c in rep.claims)} pass, "
            f"{len(rep.failed())} fail, "
            f"{sum(c.status == 'recorded' for c in rep.claims)} recorded\n"
        )
        sys.stderr.write(summary)
        for c in rep.failed():
            sys.stderr.write(f"FAIL {c.claim_id}: {c.description}\n")
    return 0 if rep.ok() else 1


def cmd_report(args) -> int:
    if args.out is None:
        args.out = f"vol3verify-d{args.d}-depth{args.depth}.{args.fmt}"
    return cmd_verify(args)


def cmd_pell(args) -> int:
    for sol in pell.pell_sequence(args.d, args.depth):
        print(f"n={sol.n}  t={sol.t}  y={sol.y}")
    return 0


def cmd_primes(args) -> int:
    selection = pell.select_prime_sequence(args.d, args.depth, args.rule)
    for row in selection.rows:
        primes = ", ".join(str(p) for p in row.primitive_primes)
        print(f"n={row.n}  t={row.t}  p={row.p}  primitive=[{primes}]")
    for n, reason in selection.skipped:
        print(f"n={n}  skipped: {reason}")
    return 0


def cmd_congruence(args) -> int:
    selection = pell.select_prime_sequence(args.d, args.depth, args.rule)
    rep = congruence.omega_zero_manifold_generators()
    image = congruence.enumerate_image(rep, cap=args.cap)
    schreier = congruence.schreier_kernel_generators(image, rep)
    print(f"image order at the Gaussian point: {image.order}")
    ok_all = True
    for row in selection.rows:
        diagram = congruence.diagram_commutes(args.d, row.n, row.p)
        kernel = diagram and all(
            congruence.kernel_membership(w, args.d, row.n, row.p) for w in schreier
        )
        ok_all = ok_all and diagram and kernel
        print(f"n={row.n}  p={row.p}  diagram={diagram}  kernel={kernel}")
    return 0 if ok_all else 1


def cmd_systole(args) -> int:
    table = bounds.systole_report(args.d, args.depth, args.rule)
    for r in table.rows:
        print(f"n={r.n}  t={r.t}  p={r.p}  bound={r.bound.value:.6f}")
    for n, reason in table.skipped:
        print(f"n={n}  skipped: {reason}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vol3verify",
        description="Exact verification of congruence lattices around vol3",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run verification suites and emit a report")
    _add_common(p)
    p.add_argument(
        "--suites",
        default=None,
        help=f"comma-separated subset of: {', '.join(SUITES)}",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="like verify, but always writes a file")
    _add_common(p)
    p.add_argument("--suites", default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("pell", help="print Pell solutions")
    _add_common(p)
    p.set_defaults(func=cmd_pell)

    p = sub.add_parser("primes", help="print primitive prime selections")
    _add_common(p)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("congruence", help="diagram and kernel checks")
    _add_common(p)
    p.set_defaults(func=cmd_congruence)

    p = sub.add_parser("systole", help="print the systole bound table")
    _add_common(p)
    p.set_defaults(func=cmd_systole)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
