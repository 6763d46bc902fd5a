"""Reproduction suites: one row per family member, checked against closed forms."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from knotconc.certificates import CertificateDB, default_database
from knotconc.config import DEFAULT_SUITE_RANGES, get_signature_bound
from knotconc.families import WH, j_k, j_k_arc_samples, k_kl, k_n, torus
from knotconc.floer import lens_d, torsion_coefficients
from knotconc.knotexpr import Cable, alexander, connected_power, render, topologically_slice_certified
from knotconc.obstructions import (
    RULE_DEFINITE_NEGATIVE,
    RULE_SIGNATURE,
    Evaluators,
    kinkiness_bounds,
    obstruct_definite,
)
from knotconc.qform import bcg_cobordism_check
from knotconc.signatures import signature_combination_check

logger = logging.getLogger(__name__)

Ranges = Dict[str, Tuple[int, int]]


@dataclass
class SuiteRow:
    label: str
    values: Dict[str, str]
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, condition: bool, message: str) -> None:
        if not condition:
            self.failures.append(message)


@dataclass
class SuiteResult:
    name: str
    ranges: Ranges
    rows: List[SuiteRow]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def failed_rows(self) -> List[SuiteRow]:
        return [row for row in self.rows if not row.passed]


def _span(ranges: Ranges, key: str) -> range:
    lo, hi = ranges[key]
    return range(lo, hi + 1)


def _thm1(ranges: Ranges, ev: Evaluators) -> Iterator[SuiteRow]:
    for n in _span(ranges, "n"):
        e = k_n(n)
        tau = ev.floer.tau(e)
        v0 = ev.floer.v_seq(e).at(0)
        top = topologically_slice_certified(e, ev.db)
        verdict = obstruct_definite(e, ev=ev)
        row = SuiteRow(
            f"K_{n}",
            {"tau": str(tau), "V_0": str(v0), "top_slice": str(top), "verdict": verdict.status.value},
        )
        row.expect(tau.is_exact and tau.value == -n, f"tau = {tau}, expected {-n}")
        row.expect(v0.lo >= 1, f"V_0 = {v0}, expected >= 1")
        row.expect(top, "topological sliceness not certified")
        row.expect(RULE_DEFINITE_NEGATIVE in verdict.rules, f"rules fired: {verdict.rules}")
        yield row


def _thm2(ranges: Ranges, ev: Evaluators) -> Iterator[SuiteRow]:
    for k, l in itertools.product(_span(ranges, "k"), _span(ranges, "l")):
        e = k_kl(k, l)
        tau = ev.floer.tau(e)
        nu = ev.floer.nu_plus(e)
        kink = kinkiness_bounds(e, ev=ev)
        row = SuiteRow(
            f"K_{k},{l}",
            {"tau": str(tau), "nu+": str(nu), "k+ >=": str(kink.k_plus_lo), "k- >=": str(kink.k_minus_lo)},
        )
        row.expect(tau.is_exact and tau.value == -l, f"tau = {tau}, expected {-l}")
        row.expect(nu.lo >= k, f"nu+ = {nu}, expected >= {k}")
        row.expect(kink.k_plus_lo >= k, f"k+ >= {kink.k_plus_lo}, expected >= {k}")
        row.expect(kink.k_minus_lo >= l, f"k- >= {kink.k_minus_lo}, expected >= {l}")
        yield row


def _remark(ranges: Ranges, ev: Evaluators) -> Iterator[SuiteRow]:
    members = list(_span(ranges, "k"))
    for k in members:
        e = j_k(k)
        sig = ev.signatures.sigma(e)
        at_minus_one = sig.value(Fraction(1, 2))
        arc = [sig.value(x) for x in j_k_arc_samples(k)]
        verdict = obstruct_definite(e, ev=ev)
        row = SuiteRow(
            f"J_{k}",
            {"sigma(-1)": str(at_minus_one), "sigma(arc)": str(arc), "verdict": verdict.status.value},
        )
        row.expect(at_minus_one == 2, f"sigma(-1) = {at_minus_one}, expected 2")
        row.expect(all(v == -2 for v in arc), f"sigma on arc = {arc}, expected -2")
        row.expect(RULE_SIGNATURE in verdict.rules, f"rules fired: {verdict.rules}")
        yield row
    group = members[:4]
    if len(group) >= 2:
        bound = get_signature_bound()
        report = signature_combination_check([j_k(k) for k in group], bound, ev.db)
        row = SuiteRow(f"J_{group[0]}..J_{group[-1]}", {"independence": report.summary()})
        row.expect(report.independent, report.summary())
        yield row


def _bcg(ranges: Ranges, ev: Evaluators) -> Iterator[SuiteRow]:
    for n in _span(ranges, "n"):
        report = bcg_cobordism_check(n)
        row = SuiteRow(f"n={n}", {c.name: "pass" if c.passed else "FAIL" for c in report.checks})
        for check in report.checks:
            row.expect(check.passed, f"{check.name}: {check.detail}")
        yield row


def _lens(ranges: Ranges, ev: Evaluators) -> Iterator[SuiteRow]:
    for n in _span(ranges, "n"):
        a = 4 * lens_d(2, 1, 0)
        b = 4 * lens_d(2 * n, 1, n)
        c = 4 * lens_d(2 * n + 2, 1, n)
        expected_c = 1 - Fraction(2 * n, n + 1)
        row = SuiteRow(
            f"n={n}",
            {"4d(S3_2,0)": str(a), "4d(S3_2n,n)": str(b), "4d(S3_2n+2,n)": str(c)},
        )
        row.expect(a == 1, f"4d(S^3_2(O), 0) = {a}")
        row.expect(b == -1, f"4d(S^3_{2 * n}(O), {n}) = {b}")
        row.expect(c == expected_c, f"4d(S^3_{2 * n + 2}(O), {n}) = {c}, expected {expected_c}")
        yield row


def _torus(ranges: Ranges, ev: Evaluators) -> Iterator[SuiteRow]:
    for k in _span(ranges, "k"):
        t = torus(2, 2 * k + 1)
        expected = (k + 1) // 2
        v0 = ev.floer.v_seq(t).at(0)
        wh_v0 = ev.floer.v_seq(connected_power(WH, k)).at(0)
        d = ev.floer.surgery_d(t, 1, 1, 0)
        row = SuiteRow(
            f"T(2,{2 * k + 1})",
            {"V_0": str(v0), "V_0(k Wh)": str(wh_v0), "d(S3_1)": str(d)},
        )
        row.expect(v0.is_exact and v0.value == expected, f"V_0 = {v0}, expected {expected}")
        row.expect(wh_v0.is_exact and wh_v0.value == expected, f"V_0({k} Wh) = {wh_v0}, expected {expected}")
        row.expect(d.is_exact and d.value == -2 * expected, f"d(S^3_1) = {d}, expected {-2 * expected}")
        yield row


def _cable(ranges: Ranges, ev: Evaluators) -> Iterator[SuiteRow]:
    for p, companion in itertools.product(_span(ranges, "p"), (torus(2, 3), torus(2, 5))):
        cable = Cable(p, 1, companion)
        v0 = ev.floer.v_seq(companion).at(0)
        values = [ev.floer.v_seq(cable).at(i) for i in range(p // 2 + 1)]
        row = SuiteRow(f"{render(companion)}_{p},1", {"V_0(K)": str(v0), "V_i": ", ".join(map(str, values))})
        row.expect(all(v == v0 for v in values), f"V_i = {values}, expected all {v0}")
        yield row
    wu_cable = Cable(2, 3, torus(2, 3))
    wu = ev.floer.v_seq(wu_cable)
    torsion = torsion_coefficients(alexander(wu_cable, ev.db))
    wu_values = [wu.at(i) for i in range(len(torsion))]
    row = SuiteRow(
        "T(2,3)_2,3",
        {"Wu": ", ".join(map(str, wu_values)), "torsion": ", ".join(map(str, torsion))},
    )
    row.expect(
        all(v.is_exact and v.value == t for v, t in zip(wu_values, torsion)),
        f"Wu {wu_values} differs from torsion coefficients {torsion}",
    )
    yield row


SUITES: Dict[str, Callable[[Ranges, Evaluators], Iterator[SuiteRow]]] = {
    "thm1": _thm1,
    "thm2": _thm2,
    "remark": _remark,
    "bcg": _bcg,
    "lens": _lens,
    "torus": _torus,
    "cable": _cable,
}


def run_suite(name: str, ranges: Optional[Ranges] = None, db: Optional[CertificateDB] = None) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"Unknown suite: {name!r} (choose from {', '.join(SUITES)})")
    merged = dict(DEFAULT_SUITE_RANGES[name])
    for key, value in (ranges or {}).items():
        if key not in merged:
            raise ValueError(f"suite {name} has no range {key!r}")
        merged[key] = value
    ev = Evaluators(db or default_database())
    rows = []
    for row in SUITES[name](merged, ev):
        logger.info("Suite %s %s: %s", name, row.label, "pass" if row.passed else "FAIL")
        rows.append(row)
    return SuiteResult(name, merged, rows)
