"""Command-line interface for the knotconc engine."""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from knotconc import render as text
from knotconc import schema
from knotconc.certificates import CertificateDB, build_database
from knotconc.config import DEFAULT_SUITE_RANGES, get_atoms_path, get_signature_bound, init_environment, parse_range
from knotconc.errors import (
    CableDomainError,
    CertificateError,
    InconsistentBoundsError,
    KnotSyntaxError,
    SignatureJumpError,
    UnknownAtomError,
)
from knotconc.floer import FloerEvaluator
from knotconc.graph import run_report
from knotconc.knotexpr import parse, render
from knotconc.obstructions import Evaluators, crossing_change_bounds, prop2_composite
from knotconc.qform import bcg_cobordism_check
from knotconc.signatures import SignatureEvaluator, signature_combination_check, theta_to_x
from knotconc.suites import SUITES, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CERTIFICATE = 3

RANGE_FLAGS = ("n", "k", "l", "p")


class _Output:
    """Pairs the human rendering with its JSON model so both carry the same numbers."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.as_json = args.json

    def emit(self, human: str, model: schema.BaseModel) -> None:
        body = schema.dump(model) if self.as_json else human
        sys.stdout.write(body + "\n")
        sys.stdout.flush()


def _database(args: argparse.Namespace) -> CertificateDB:
    path = Path(args.atoms) if args.atoms else get_atoms_path()
    return build_database(path)


def _strict_gaps(args: argparse.Namespace, gaps: Sequence[str]) -> int:
    if args.strict and gaps:
        sys.stderr.write("certificate gaps under --strict:\n" + "\n".join(f"- {g}" for g in gaps) + "\n")
        return EXIT_CERTIFICATE
    return EXIT_OK


def cmd_report(args: argparse.Namespace, db: CertificateDB) -> int:
    report = run_report(args.expr, db)
    _Output(args).emit(report.text, schema.report_model(report))
    return _strict_gaps(args, report.gaps)


def cmd_suite(args: argparse.Namespace, db: CertificateDB) -> int:
    allowed = DEFAULT_SUITE_RANGES.get(args.name, {})
    ranges = {}
    for key in RANGE_FLAGS:
        raw = getattr(args, key)
        if raw is None:
            continue
        if key not in allowed:
            raise ValueError(f"suite {args.name} takes no --{key} range")
        ranges[key] = parse_range(raw)
    result = run_suite(args.name, ranges, db)
    _Output(args).emit(text.render_suite(result), schema.suite_model(result))
    return EXIT_OK if result.passed else EXIT_FAILED


def cmd_surgery(args: argparse.Namespace, db: CertificateDB) -> int:
    e = parse(args.expr, db)
    rows = FloerEvaluator(db).surgery_table(e, args.p, args.q)
    normalized = render(e)
    _Output(args).emit(
        text.render_surgery(normalized, args.p, args.q, rows),
        schema.surgery_model(normalized, args.p, args.q, rows),
    )
    return _strict_gaps(args, db.gaps(e))


def cmd_sigma(args: argparse.Namespace, db: CertificateDB) -> int:
    e = parse(args.expr, db)
    sig = SignatureEvaluator(db).sigma(e)
    samples = []
    for raw in args.at or []:
        try:
            theta = Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"invalid angle {raw!r}: expected theta/pi such as 2/3") from exc
        try:
            samples.append((theta, sig.value(theta_to_x(theta)), ""))
        except SignatureJumpError as exc:
            samples.append((theta, None, str(exc)))
    normalized = render(e)
    _Output(args).emit(
        text.render_sigma(normalized, sig, samples),
        schema.sigma_model(normalized, sig, samples),
    )
    return _strict_gaps(args, db.gaps(e))


def cmd_check_bcg(args: argparse.Namespace, db: CertificateDB) -> int:
    lo, hi = parse_range(args.n or "{0}..{1}".format(*DEFAULT_SUITE_RANGES["bcg"]["n"]))
    reports = [bcg_cobordism_check(n) for n in range(lo, hi + 1)]
    _Output(args).emit(text.render_bcg(reports), schema.bcg_model(reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_independence(args: argparse.Namespace, db: CertificateDB) -> int:
    knots = [parse(raw, db) for raw in args.exprs]
    bound = args.bound if args.bound is not None else get_signature_bound()
    report = signature_combination_check(knots, bound, db)
    labels = [render(k) for k in knots]
    _Output(args).emit(text.render_independence(labels, report), schema.independence_model(labels, report))
    return EXIT_OK if report.independent else EXIT_FAILED


def cmd_composite(args: argparse.Namespace, db: CertificateDB) -> int:
    k = parse(args.k, db)
    j = parse(args.j, db)
    report = prop2_composite(k, j, args.n, ev=Evaluators(db))
    normalized = render(report.expression)
    _Output(args).emit(text.render_composite(normalized, report), schema.composite_model(normalized, report))
    return _strict_gaps(args, db.gaps(report.expression))


def cmd_crossing(args: argparse.Namespace, db: CertificateDB) -> int:
    e = parse(args.expr, db)
    refinement = crossing_change_bounds(e, args.pos, args.neg, ev=Evaluators(db))
    normalized = render(e)
    _Output(args).emit(
        text.render_crossing(normalized, args.pos, args.neg, refinement),
        schema.crossing_model(normalized, args.pos, args.neg, refinement),
    )
    return _strict_gaps(args, db.gaps(e))


COMMANDS: Dict[str, Callable[[argparse.Namespace, CertificateDB], int]] = {
    "report": cmd_report,
    "suite": cmd_suite,
    "surgery": cmd_surgery,
    "sigma": cmd_sigma,
    "check-bcg": cmd_check_bcg,
    "independence": cmd_independence,
    "composite": cmd_composite,
    "crossing": cmd_crossing,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit versioned JSON instead of text.")
    common.add_argument("--strict", action="store_true", help="Exit 3 when certificate data is missing.")
    common.add_argument("--atoms", help="JSON atom registry (overrides KNOTCONC_ATOMS).")

    parser = argparse.ArgumentParser(prog="knotconc", description="Knot concordance invariants and definite-sliceness obstructions.")
    sub = parser.add_subparsers(dest="command", required=True)

    report = sub.add_parser("report", parents=[common], help="Full invariant report for one expression.")
    report.add_argument("expr")

    suite = sub.add_parser("suite", parents=[common], help="Run a reproduction suite.")
    suite.add_argument("name", choices=sorted(SUITES))
    for key in RANGE_FLAGS:
        suite.add_argument(f"--{key}", help=f"Inclusive range for {key}, e.g. 1..10.")

    surgery = sub.add_parser("surgery", parents=[common], help="d-invariants of p/q surgery.")
    surgery.add_argument("expr")
    surgery.add_argument("p", type=int)
    surgery.add_argument("q", type=int)

    sigma = sub.add_parser("sigma", parents=[common], help="Levine-Tristram signature function.")
    sigma.add_argument("expr")
    sigma.add_argument("--at", action="append", help="Sample angle theta/pi (repeatable), e.g. 1 or 2/3.")

    bcg = sub.add_parser("check-bcg", parents=[common], help="Replay the quadratic-form cobordism checks.")
    bcg.add_argument("--n", help="Inclusive range of n, e.g. 1..50.")

    independence = sub.add_parser("independence", parents=[common], help="Signature independence check.")
    independence.add_argument("exprs", nargs="+")
    independence.add_argument("--bound", type=int, help="Coefficient bound (default KNOTCONC_SIGNATURE_BOUND).")

    composite = sub.add_parser("composite", parents=[common], help="Obstruct K # (J_{n,1})*.")
    composite.add_argument("k")
    composite.add_argument("j")
    composite.add_argument("n", type=int)

    crossing = sub.add_parser("crossing", parents=[common], help="Refine invariants from crossing changes.")
    crossing.add_argument("expr")
    crossing.add_argument("pos", type=int)
    crossing.add_argument("neg", type=int)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    init_environment()
    args = build_parser().parse_args(argv)
    try:
        db = _database(args)
        return COMMANDS[args.command](args, db)
    except (KnotSyntaxError, UnknownAtomError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except CertificateError as exc:
        sys.stderr.write(f"certificate error: {exc}\n")
        return EXIT_CERTIFICATE
    except InconsistentBoundsError as exc:
        sys.stderr.write(f"contradiction: {exc}\n")
        return EXIT_FAILED
    except (CableDomainError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
