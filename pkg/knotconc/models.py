"""Shared data structures for the report pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, TypedDict

from knotconc.certificates import CertificateDB
from knotconc.intervals import IntInterval, VSeq
from knotconc.knotexpr import KnotExpr
from knotconc.laurent import LaurentPoly
from knotconc.obstructions import KinkinessBound, Verdict
from knotconc.signatures import SigFn


@dataclass
class Report:
    expression: str
    normalized: str
    alexander: Optional[str]
    topologically_slice: bool
    tau: IntInterval
    v_seq: VSeq
    nu_plus: IntInterval
    d1: IntInterval
    kinkiness: KinkinessBound
    sigma: Optional[SigFn]
    sigma_note: str
    verdicts: List[Verdict]
    gaps: List[str] = field(default_factory=list)
    text: str = ""


class ReportState(TypedDict):
    text: str
    db: CertificateDB
    expr: Optional[KnotExpr]
    alexander: Optional[LaurentPoly]
    top_slice: bool
    tau: Optional[IntInterval]
    v_seq: Optional[VSeq]
    nu_plus: Optional[IntInterval]
    d1: Optional[IntInterval]
    kinkiness: Optional[KinkinessBound]
    sigma: Optional[SigFn]
    sigma_note: str
    verdicts: List[Verdict]
    gaps: List[str]
    report: Optional[Report]
