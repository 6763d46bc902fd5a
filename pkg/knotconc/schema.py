"""Versioned JSON output models for every CLI subcommand."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from knotconc.config import JSON_SCHEMA_VERSION
from knotconc.intervals import IntInterval, RationalInterval, VSeq
from knotconc.models import Report
from knotconc.obstructions import CompositeReport, CrossingRefinement, Verdict
from knotconc.qform import BCGReport
from knotconc.signatures import IndependenceReport, SigFn
from knotconc.suites import SuiteResult


class RationalModel(BaseModel):
    num: int
    den: int = Field(..., gt=0)


class IntervalModel(BaseModel):
    """Integer interval; ``null`` marks an unbounded end."""

    lo: Optional[int]
    hi: Optional[int]


class RationalIntervalModel(BaseModel):
    lo: Optional[RationalModel]
    hi: Optional[RationalModel]


class VSeqModel(BaseModel):
    entries: List[IntervalModel]
    zero_from: Optional[int]


class SigPieceModel(BaseModel):
    theta_lo: RationalModel
    theta_hi: RationalModel
    value: int


class ReasonModel(BaseModel):
    rule: str
    citation: str
    evidence: str


class VerdictModel(BaseModel):
    target: str
    status: str
    reasons: List[ReasonModel]


class KinkinessModel(BaseModel):
    k_plus_lo: int
    k_minus_lo: int


class Versioned(BaseModel):
    schema_version: int = Field(JSON_SCHEMA_VERSION, serialization_alias="schema")


class ReportModel(Versioned):
    expression: str
    normalized: str
    alexander: Optional[str]
    topologically_slice: bool
    tau: IntervalModel
    v_seq: VSeqModel
    nu_plus: IntervalModel
    d1: IntervalModel
    kinkiness: KinkinessModel
    sigma: Optional[List[SigPieceModel]]
    sigma_note: str
    verdicts: List[VerdictModel]
    gaps: List[str]


class SuiteRowModel(BaseModel):
    label: str
    values: Dict[str, str]
    passed: bool
    failures: List[str]


class SuiteModel(Versioned):
    suite: str
    ranges: Dict[str, Tuple[int, int]]
    passed: bool
    rows: List[SuiteRowModel]


class SurgeryModel(Versioned):
    expression: str
    p: int
    q: int
    rows: List[RationalIntervalModel]


class SigmaSampleModel(BaseModel):
    theta: RationalModel
    value: Optional[int]
    note: str = ""


class SigmaModel(Versioned):
    expression: str
    pieces: List[SigPieceModel]
    samples: List[SigmaSampleModel]


class CheckModel(BaseModel):
    name: str
    passed: bool
    detail: str


class BCGRunModel(BaseModel):
    n: int
    passed: bool
    checks: List[CheckModel]
    skipped: List[str]


class BCGModel(Versioned):
    passed: bool
    runs: List[BCGRunModel]


class IndependenceModel(Versioned):
    knots: List[str]
    bound: int
    checked: int
    independent: bool
    dependent: List[List[int]]


class HypothesisModel(BaseModel):
    statement: str
    holds: bool
    evidence: str


class CompositeModel(Versioned):
    expression: str
    hypotheses: List[HypothesisModel]
    hypotheses_hold: bool
    verdict: VerdictModel


class CrossingModel(Versioned):
    expression: str
    pos: int
    neg: int
    tau: IntervalModel
    nu_plus: IntervalModel
    nu_plus_mirror: IntervalModel


def _bound(value: object) -> Optional[int]:
    if isinstance(value, float) and math.isinf(value):
        return None
    return int(value)


def rational(value: Fraction) -> RationalModel:
    value = Fraction(value)
    return RationalModel(num=value.numerator, den=value.denominator)


def interval(value: IntInterval) -> IntervalModel:
    return IntervalModel(lo=_bound(value.lo), hi=_bound(value.hi))


def rational_interval(value: RationalInterval) -> RationalIntervalModel:
    def end(bound: object) -> Optional[RationalModel]:
        if isinstance(bound, float) and math.isinf(bound):
            return None
        return rational(bound)

    return RationalIntervalModel(lo=end(value.lo), hi=end(value.hi))


def v_sequence(seq: VSeq) -> VSeqModel:
    return VSeqModel(entries=[interval(e) for e in seq.entries], zero_from=seq.zero_from)


def sig_pieces(sig: SigFn) -> List[SigPieceModel]:
    return [SigPieceModel(theta_lo=rational(a), theta_hi=rational(b), value=v) for a, b, v in sig.table()]


def verdict(value: Verdict) -> VerdictModel:
    return VerdictModel(
        target=value.target.value,
        status=value.status.value,
        reasons=[ReasonModel(rule=r.rule, citation=r.citation, evidence=r.evidence) for r in value.reasons],
    )


def report_model(report: Report) -> ReportModel:
    return ReportModel(
        expression=report.expression,
        normalized=report.normalized,
        alexander=report.alexander,
        topologically_slice=report.topologically_slice,
        tau=interval(report.tau),
        v_seq=v_sequence(report.v_seq),
        nu_plus=interval(report.nu_plus),
        d1=interval(report.d1),
        kinkiness=KinkinessModel(k_plus_lo=report.kinkiness.k_plus_lo, k_minus_lo=report.kinkiness.k_minus_lo),
        sigma=None if report.sigma is None else sig_pieces(report.sigma),
        sigma_note=report.sigma_note,
        verdicts=[verdict(v) for v in report.verdicts],
        gaps=list(report.gaps),
    )


def suite_model(result: SuiteResult) -> SuiteModel:
    return SuiteModel(
        suite=result.name,
        ranges=dict(result.ranges),
        passed=result.passed,
        rows=[
            SuiteRowModel(label=row.label, values=row.values, passed=row.passed, failures=row.failures)
            for row in result.rows
        ],
    )


def surgery_model(normalized: str, p: int, q: int, rows: Sequence[RationalInterval]) -> SurgeryModel:
    return SurgeryModel(expression=normalized, p=p, q=q, rows=[rational_interval(r) for r in rows])


def sigma_model(
    normalized: str, sig: SigFn, samples: Sequence[Tuple[Fraction, Optional[int], str]]
) -> SigmaModel:
    return SigmaModel(
        expression=normalized,
        pieces=sig_pieces(sig),
        samples=[SigmaSampleModel(theta=rational(t), value=v, note=note) for t, v, note in samples],
    )


def bcg_model(reports: Sequence[BCGReport]) -> BCGModel:
    runs = [
        BCGRunModel(
            n=r.n,
            passed=r.passed,
            checks=[CheckModel(name=c.name, passed=c.passed, detail=c.detail) for c in r.checks],
            skipped=list(r.skipped),
        )
        for r in reports
    ]
    return BCGModel(passed=all(r.passed for r in runs), runs=runs)


def independence_model(labels: Sequence[str], report: IndependenceReport) -> IndependenceModel:
    return IndependenceModel(
        knots=list(labels),
        bound=report.bound,
        checked=report.checked,
        independent=report.independent,
        dependent=[list(v) for v in report.dependent],
    )


def composite_model(normalized: str, report: CompositeReport) -> CompositeModel:
    return CompositeModel(
        expression=normalized,
        hypotheses=[HypothesisModel(statement=h.statement, holds=h.holds, evidence=h.evidence) for h in report.hypotheses],
        hypotheses_hold=report.hypotheses_hold,
        verdict=verdict(report.verdict),
    )


def crossing_model(normalized: str, pos: int, neg: int, refinement: CrossingRefinement) -> CrossingModel:
    return CrossingModel(
        expression=normalized,
        pos=pos,
        neg=neg,
        tau=interval(refinement.tau),
        nu_plus=interval(refinement.nu_plus),
        nu_plus_mirror=interval(refinement.nu_plus_mirror),
    )


def dump(model: BaseModel) -> str:
    return model.model_dump_json(by_alias=True, indent=2)
