"""Obstructions to sliceness in definite 4-manifolds, and kinkiness bounds.

Every rule fires only on certified interval separations; an inconclusive
verdict never asserts sliceness.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, TypeVar

from knotconc.certificates import CertificateDB, default_database
from knotconc.errors import CableDomainError, CertificateError, InconsistentBoundsError
from knotconc.floer import FloerEvaluator
from knotconc.intervals import INF, IntInterval
from knotconc.knotexpr import Cable, KnotExpr, Mirror, Sum, mirror, normalize, render
from knotconc.signatures import SigFn, SignatureEvaluator

logger = logging.getLogger(__name__)

T = TypeVar("T")


class Target(str, Enum):
    NEGATIVE_DEFINITE = "negative_definite"
    POSITIVE_DEFINITE = "positive_definite"
    ANY_DEFINITE = "any_definite"


class Status(str, Enum):
    OBSTRUCTED = "obstructed"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Reason:
    rule: str
    citation: str
    evidence: str


@dataclass
class Verdict:
    target: Target
    status: Status
    reasons: List[Reason] = field(default_factory=list)

    @property
    def obstructed(self) -> bool:
        return self.status is Status.OBSTRUCTED

    @property
    def rules(self) -> List[str]:
        return [r.rule for r in self.reasons]


def _verdict(target: Target, reasons: List[Reason]) -> Verdict:
    status = Status.OBSTRUCTED if reasons else Status.INCONCLUSIVE
    return Verdict(target, status, reasons)


@dataclass(frozen=True)
class KinkinessBound:
    k_plus_lo: int
    k_minus_lo: int

    def __post_init__(self) -> None:
        if self.k_plus_lo < 0 or self.k_minus_lo < 0:
            raise ValueError("kinkiness bounds must be >= 0")


class Evaluators:
    """Floer and signature evaluators sharing one certificate database."""

    def __init__(self, db: Optional[CertificateDB] = None) -> None:
        self.db = db or default_database()
        self.floer = FloerEvaluator(self.db)
        self.signatures = SignatureEvaluator(self.db)


def _guarded(fn: Callable[[], T], fallback: T, label: str) -> T:
    try:
        return fn()
    except (CableDomainError, CertificateError) as exc:
        logger.warning("%s unavailable: %s", label, exc)
        return fallback


RULE_D1 = "d1-nonzero"
RULE_TAU_POSITIVE = "tau-positive"
RULE_DEFINITE_NEGATIVE = "d1-and-negative-tau"
RULE_DEFINITE_MIRROR = "mirror-d1-and-positive-tau"
RULE_SIGNATURE = "signature-both-signs"
RULE_BOTH_SIDES = "both-one-sided"
RULE_COMPOSITE = "composite-cable"

_CITATIONS = {
    RULE_D1: "a knot slice in a negative-definite 4-manifold has d_1 = 0",
    RULE_TAU_POSITIVE: "a knot slice in a negative-definite 4-manifold has tau <= 0",
    RULE_DEFINITE_NEGATIVE: "d_1 != 0 and tau < 0 rule out every definite 4-manifold",
    RULE_DEFINITE_MIRROR: "d_1 of the mirror != 0 and tau > 0 rule out every definite 4-manifold",
    RULE_SIGNATURE: "a Levine-Tristram signature taking both signs at regular points rules out every definite 4-manifold",
    RULE_BOTH_SIDES: "obstructed in negative-definite and in positive-definite 4-manifolds",
    RULE_COMPOSITE: "K # (J_{n,1})* with V_0(K) > V_0(J), tau(K), tau(J) >= 1 and tau(K) < n tau(J)",
}


def _reason(rule: str, evidence: str) -> Reason:
    return Reason(rule, _CITATIONS[rule], evidence)


def _d1(ev: Evaluators, e: KnotExpr) -> IntInterval:
    return _guarded(lambda: ev.floer.d1(e), IntInterval(-INF, 0), f"d_1({render(e)})")


def _tau(ev: Evaluators, e: KnotExpr) -> IntInterval:
    return _guarded(lambda: ev.floer.tau(e), IntInterval(), f"tau({render(e)})")


def _negative_reasons(ev: Evaluators, e: KnotExpr) -> List[Reason]:
    reasons = []
    d1 = _d1(ev, e)
    if d1.hi <= -2:
        reasons.append(_reason(RULE_D1, f"d_1 in {d1}"))
    tau = _tau(ev, e)
    if tau.lo >= 1:
        reasons.append(_reason(RULE_TAU_POSITIVE, f"tau in {tau}"))
    return reasons


def obstruct_negative_definite(
    e: KnotExpr, db: Optional[CertificateDB] = None, ev: Optional[Evaluators] = None
) -> Verdict:
    ev = ev or Evaluators(db)
    return _verdict(Target.NEGATIVE_DEFINITE, _negative_reasons(ev, normalize(e)))


def obstruct_positive_definite(
    e: KnotExpr, db: Optional[CertificateDB] = None, ev: Optional[Evaluators] = None
) -> Verdict:
    """Orientation reversal: K is slice in V iff K* is slice in -V."""
    ev = ev or Evaluators(db)
    reasons = [
        Reason(r.rule, r.citation + " (applied to the mirror)", r.evidence)
        for r in _negative_reasons(ev, mirror(normalize(e)))
    ]
    return _verdict(Target.POSITIVE_DEFINITE, reasons)


def _signature_reason(ev: Evaluators, e: KnotExpr) -> Optional[Reason]:
    sig: Optional[SigFn] = _guarded(lambda: ev.signatures.sigma(e), None, f"sigma({render(e)})")
    if sig is None:
        return None
    lowest, highest = sig.extremes()
    if highest < 2 or lowest > -2:
        return None
    pieces = sig.pieces()
    high = next((a, b, v) for a, b, v in pieces if v >= 2)
    low = next((a, b, v) for a, b, v in pieces if v <= -2)
    evidence = (
        f"sigma = {high[2]} on theta/pi in ({2 * high[0]}, {2 * high[1]}), "
        f"sigma = {low[2]} on theta/pi in ({2 * low[0]}, {2 * low[1]})"
    )
    return _reason(RULE_SIGNATURE, evidence)


def obstruct_definite(
    e: KnotExpr, db: Optional[CertificateDB] = None, ev: Optional[Evaluators] = None
) -> Verdict:
    ev = ev or Evaluators(db)
    e = normalize(e)
    reasons: List[Reason] = []
    d1 = _d1(ev, e)
    d1_mirror = _d1(ev, mirror(e))
    tau = _tau(ev, e)
    if d1.hi <= -2 and tau.hi <= -1:
        reasons.append(_reason(RULE_DEFINITE_NEGATIVE, f"d_1 in {d1}, tau in {tau}"))
    if d1_mirror.hi <= -2 and tau.lo >= 1:
        reasons.append(_reason(RULE_DEFINITE_MIRROR, f"d_1(mirror) in {d1_mirror}, tau in {tau}"))
    sig_reason = _signature_reason(ev, e)
    if sig_reason is not None:
        reasons.append(sig_reason)
    negative = obstruct_negative_definite(e, ev=ev)
    positive = obstruct_positive_definite(e, ev=ev)
    if negative.obstructed and positive.obstructed:
        evidence = f"negative: {', '.join(negative.rules)}; positive: {', '.join(positive.rules)}"
        reasons.append(_reason(RULE_BOTH_SIDES, evidence))
    verdict = _verdict(Target.ANY_DEFINITE, reasons)
    logger.info("Definite verdict for %s: %s %s", render(e), verdict.status.value, verdict.rules)
    return verdict


# ---------------------------------------------------------------------------
# Composite construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Hypothesis:
    statement: str
    holds: bool
    evidence: str


@dataclass
class CompositeReport:
    expression: KnotExpr
    hypotheses: List[Hypothesis]
    verdict: Verdict

    @property
    def hypotheses_hold(self) -> bool:
        return all(h.holds for h in self.hypotheses)

    @property
    def failed(self) -> List[Hypothesis]:
        return [h for h in self.hypotheses if not h.holds]


def composite_expression(k: KnotExpr, j: KnotExpr, n: int) -> KnotExpr:
    """``K # (J_{n,1})*``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return normalize(Sum((k, Mirror(Cable(n, 1, j)))))


def prop2_composite(
    k: KnotExpr, j: KnotExpr, n: int, db: Optional[CertificateDB] = None, ev: Optional[Evaluators] = None
) -> CompositeReport:
    ev = ev or Evaluators(db)
    expression = composite_expression(k, j, n)
    v0_k = _guarded(lambda: ev.floer.v_seq(k).at(0), IntInterval(0, INF), "V_0(K)")
    v0_j = _guarded(lambda: ev.floer.v_seq(j).at(0), IntInterval(0, INF), "V_0(J)")
    tau_k = _tau(ev, k)
    tau_j = _tau(ev, j)
    hypotheses = [
        Hypothesis("V_0(K) > V_0(J)", v0_k.lo > v0_j.hi, f"V_0(K) in {v0_k}, V_0(J) in {v0_j}"),
        Hypothesis("tau(K) >= 1", tau_k.lo >= 1, f"tau(K) in {tau_k}"),
        Hypothesis("tau(J) >= 1", tau_j.lo >= 1, f"tau(J) in {tau_j}"),
        Hypothesis(f"tau(K) < {n} tau(J)", tau_k.hi < n * tau_j.lo, f"tau(K) in {tau_k}, tau(J) in {tau_j}"),
    ]
    reasons: List[Reason] = []
    if all(h.holds for h in hypotheses):
        reasons.append(_reason(RULE_COMPOSITE, "; ".join(h.evidence for h in hypotheses)))
    else:
        logger.info("Composite hypotheses not certified: %s", [h.statement for h in hypotheses if not h.holds])
    return CompositeReport(expression, hypotheses, _verdict(Target.ANY_DEFINITE, reasons))


# ---------------------------------------------------------------------------
# Kinkiness and crossing changes
# ---------------------------------------------------------------------------


def kinkiness_bounds(
    e: KnotExpr, db: Optional[CertificateDB] = None, ev: Optional[Evaluators] = None
) -> KinkinessBound:
    ev = ev or Evaluators(db)
    e = normalize(e)
    tau = _tau(ev, e)
    nu = _guarded(lambda: ev.floer.nu_plus(e), IntInterval(0, INF), "nu+")
    nu_mirror = _guarded(lambda: ev.floer.nu_plus(mirror(e)), IntInterval(0, INF), "nu+(mirror)")
    k_plus = max(0, nu.lo, tau.lo)
    k_minus = max(0, nu_mirror.lo, -tau.hi)
    return KinkinessBound(int(k_plus), int(k_minus))


@dataclass(frozen=True)
class CrossingRefinement:
    tau: IntInterval
    nu_plus: IntInterval
    nu_plus_mirror: IntInterval


def crossing_change_bounds(
    e: KnotExpr, pos: int, neg: int, db: Optional[CertificateDB] = None, ev: Optional[Evaluators] = None
) -> CrossingRefinement:
    """Refine invariants given ``pos`` positive and ``neg`` negative crossing changes to a slice knot."""
    if pos < 0 or neg < 0:
        raise ValueError("crossing-change counts must be >= 0")
    ev = ev or Evaluators(db)
    e = normalize(e)
    tau = ev.floer.tau(e)
    nu = ev.floer.nu_plus(e)
    nu_mirror = ev.floer.nu_plus(mirror(e))
    try:
        return CrossingRefinement(
            tau=tau.intersect(IntInterval(-neg, pos)),
            nu_plus=nu.intersect(IntInterval(0, pos)),
            nu_plus_mirror=nu_mirror.intersect(IntInterval(0, neg)),
        )
    except InconsistentBoundsError as exc:
        raise InconsistentBoundsError(
            f"declared crossing changes (+{pos}, -{neg}) contradict computed invariants "
            f"(tau in {tau}, nu+ in {nu}, nu+(mirror) in {nu_mirror})"
        ) from exc
