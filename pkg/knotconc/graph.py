"""Report pipeline: parse, evaluate and render one knot expression."""

from __future__ import annotations

import logging
from typing import Callable, Optional

from langgraph.graph import END, StateGraph

from knotconc.certificates import CertificateDB, default_database
from knotconc.errors import CableDomainError, CertificateError
from knotconc.intervals import INF, IntInterval, VSeq
from knotconc.knotexpr import alexander, parse, render, topologically_slice_certified
from knotconc.models import Report, ReportState
from knotconc.obstructions import (
    Evaluators,
    KinkinessBound,
    kinkiness_bounds,
    obstruct_definite,
    obstruct_negative_definite,
    obstruct_positive_definite,
)
from knotconc.render import render_report

logger = logging.getLogger(__name__)


def _parser(state: ReportState) -> ReportState:
    expr = parse(state["text"], state["db"])
    logger.info("Report for %s", render(expr))
    return {**state, "expr": expr, "gaps": state["db"].gaps(expr)}


def _classical_stage(state: ReportState) -> ReportState:
    e, db = state["expr"], state["db"]
    try:
        poly = alexander(e, db)
    except (CertificateError, CableDomainError) as exc:
        logger.warning("Alexander polynomial unavailable: %s", exc)
        poly = None
    try:
        top_slice = topologically_slice_certified(e, db)
    except (CertificateError, CableDomainError):
        top_slice = False
    return {**state, "alexander": poly, "top_slice": top_slice}


def _make_floer_stage(ev: Evaluators) -> Callable[[ReportState], ReportState]:
    def floer_stage(state: ReportState) -> ReportState:
        e = state["expr"]
        try:
            return {
                **state,
                "tau": ev.floer.tau(e),
                "v_seq": ev.floer.v_seq(e),
                "nu_plus": ev.floer.nu_plus(e),
                "d1": ev.floer.d1(e),
                "kinkiness": kinkiness_bounds(e, ev=ev),
            }
        except CableDomainError as exc:
            logger.warning("Floer invariants unavailable: %s", exc)
            return {
                **state,
                "tau": IntInterval(),
                "v_seq": VSeq.unknown(),
                "nu_plus": IntInterval.nonnegative(),
                "d1": IntInterval(-INF, 0),
                "kinkiness": KinkinessBound(0, 0),
            }

    return floer_stage


def _make_signature_stage(ev: Evaluators) -> Callable[[ReportState], ReportState]:
    def signature_stage(state: ReportState) -> ReportState:
        try:
            return {**state, "sigma": ev.signatures.sigma(state["expr"]), "sigma_note": ""}
        except (CertificateError, CableDomainError) as exc:
            return {**state, "sigma": None, "sigma_note": str(exc)}

    return signature_stage


def _make_verdict_stage(ev: Evaluators) -> Callable[[ReportState], ReportState]:
    def verdict_stage(state: ReportState) -> ReportState:
        e = state["expr"]
        verdicts = [
            obstruct_negative_definite(e, ev=ev),
            obstruct_positive_definite(e, ev=ev),
            obstruct_definite(e, ev=ev),
        ]
        return {**state, "verdicts": verdicts}

    return verdict_stage


def _renderer(state: ReportState) -> ReportState:
    poly = state["alexander"]
    report = Report(
        expression=state["text"],
        normalized=render(state["expr"]),
        alexander=None if poly is None else str(poly),
        topologically_slice=state["top_slice"],
        tau=state["tau"],
        v_seq=state["v_seq"],
        nu_plus=state["nu_plus"],
        d1=state["d1"],
        kinkiness=state["kinkiness"],
        sigma=state["sigma"],
        sigma_note=state["sigma_note"],
        verdicts=state["verdicts"],
        gaps=state["gaps"],
    )
    report.text = render_report(report)
    return {**state, "report": report}


def build_graph(db: CertificateDB):
    ev = Evaluators(db)
    graph = StateGraph(ReportState)

    graph.add_node("parser", _parser)
    graph.add_node("classical_stage", _classical_stage)
    graph.add_node("floer_stage", _make_floer_stage(ev))
    graph.add_node("signature_stage", _make_signature_stage(ev))
    graph.add_node("verdict_stage", _make_verdict_stage(ev))
    graph.add_node("renderer", _renderer)

    graph.set_entry_point("parser")
    graph.add_edge("parser", "classical_stage")
    graph.add_edge("classical_stage", "floer_stage")
    graph.add_edge("floer_stage", "signature_stage")
    graph.add_edge("signature_stage", "verdict_stage")
    graph.add_edge("verdict_stage", "renderer")
    graph.add_edge("renderer", END)

    return graph.compile()


def run_report(text: str, db: Optional[CertificateDB] = None) -> Report:
    db = db or default_database()
    app = build_graph(db)
    initial_state: ReportState = {
        "text": text,
        "db": db,
        "expr": None,
        "alexander": None,
        "top_slice": False,
        "tau": None,
        "v_seq": None,
        "nu_plus": None,
        "d1": None,
        "kinkiness": None,
        "sigma": None,
        "sigma_note": "",
        "verdicts": [],
        "gaps": [],
        "report": None,
    }
    result = app.invoke(initial_state)
    return result["report"]


__all__ = ["build_graph", "run_report"]
