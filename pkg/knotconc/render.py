"""Rendering utilities for reports, suites and subcommand output."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from knotconc.intervals import RationalInterval
from knotconc.models import Report
from knotconc.obstructions import CompositeReport, CrossingRefinement, Verdict
from knotconc.qform import BCGReport
from knotconc.signatures import IndependenceReport, SigFn
from knotconc.suites import SuiteResult


def render_verdicts(verdicts: Sequence[Verdict]) -> str:
    lines = []
    for verdict in verdicts:
        lines.append(f"- {verdict.target.value}: {verdict.status.value}")
        for reason in verdict.reasons:
            lines.append(f"    {reason.rule}: {reason.citation} [{reason.evidence}]")
    return "\n".join(lines)


def render_sigma_table(sig: SigFn) -> str:
    if sig.is_zero():
        return "  identically 0"
    lines = []
    for a, b, value in sig.table():
        lines.append(f"  theta/pi in ({a}, {b}): {value}")
    return "\n".join(lines)


def _top_slice_text(report: Report) -> str:
    if not report.topologically_slice:
        return "not certified"
    if report.alexander == "1":
        return "certified (Alexander polynomial 1)"
    return "certified (registered atoms)"


def render_report(report: Report) -> str:
    lines: List[str] = [
        f"Expression: {report.expression}",
        f"Normal form: {report.normalized}",
        f"Alexander polynomial: {report.alexander or 'unavailable'}",
        f"Topologically slice: {_top_slice_text(report)}",
        f"tau: {report.tau}",
        f"V_k: {report.v_seq}",
        f"nu+: {report.nu_plus}",
        f"d_1: {report.d1}",
        f"Kinkiness: k+ >= {report.kinkiness.k_plus_lo}, k- >= {report.kinkiness.k_minus_lo}",
        "Signature:",
    ]
    if report.sigma is None:
        lines.append(f"  unavailable: {report.sigma_note}")
    else:
        lines.append(render_sigma_table(report.sigma))
    lines.append("Verdicts:")
    lines.append(render_verdicts(report.verdicts))
    if report.gaps:
        lines.append("Certificate gaps:")
        lines.extend(f"- {gap}" for gap in report.gaps)
    return "\n".join(lines)


def render_suite(result: SuiteResult) -> str:
    spans = ", ".join(f"{key}={lo}..{hi}" for key, (lo, hi) in result.ranges.items())
    lines = [f"Suite {result.name} ({spans})"]
    for row in result.rows:
        values = "  ".join(f"{key}={value}" for key, value in row.values.items())
        status = "PASS" if row.passed else "FAIL: " + "; ".join(row.failures)
        lines.append(f"- {row.label}: {values}  {status}")
    passed = sum(1 for row in result.rows if row.passed)
    lines.append(f"{passed}/{len(result.rows)} rows passed")
    return "\n".join(lines)


def render_surgery(normalized: str, p: int, q: int, rows: Sequence[RationalInterval]) -> str:
    lines = [f"d(S^3_{p}/{q}({normalized}), i):"]
    lines.extend(f"- i={i}: {value}" for i, value in enumerate(rows))
    return "\n".join(lines)


def render_sigma(
    normalized: str, sig: SigFn, samples: Sequence[Tuple[Fraction, Optional[int], str]]
) -> str:
    lines = [f"Levine-Tristram signature of {normalized}:", render_sigma_table(sig)]
    for theta, value, note in samples:
        lines.append(f"- theta/pi = {theta}: {note if value is None else value}")
    return "\n".join(lines)


def render_bcg(reports: Sequence[BCGReport]) -> str:
    lines = []
    for report in reports:
        lines.append(f"n={report.n}: {'pass' if report.passed else 'FAIL'}")
        for check in report.checks:
            lines.append(f"  {check.name}: {'pass' if check.passed else 'FAIL'} ({check.detail})")
        for note in report.skipped:
            lines.append(f"  {note}")
    return "\n".join(lines)


def render_independence(labels: Sequence[str], report: IndependenceReport) -> str:
    lines = [f"Knots: {', '.join(labels) if labels else '(none)'}", report.summary()]
    lines.extend(f"- {vector}" for vector in report.dependent[:10])
    return "\n".join(lines)


def render_composite(normalized: str, report: CompositeReport) -> str:
    lines = [f"Composite knot: {normalized}", "Hypotheses:"]
    for hypothesis in report.hypotheses:
        mark = "holds" if hypothesis.holds else "not certified"
        lines.append(f"- {hypothesis.statement}: {mark} ({hypothesis.evidence})")
    lines.append("Verdict:")
    lines.append(render_verdicts([report.verdict]))
    return "\n".join(lines)


def render_crossing(normalized: str, pos: int, neg: int, refinement: CrossingRefinement) -> str:
    return "\n".join(
        [
            f"{normalized} with +{pos} / -{neg} crossing changes to a slice knot:",
            f"- tau: {refinement.tau}",
            f"- nu+: {refinement.nu_plus}",
            f"- nu+(mirror): {refinement.nu_plus_mirror}",
        ]
    )
