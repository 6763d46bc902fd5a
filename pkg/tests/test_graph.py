from __future__ import annotations

from unittest.mock import patch

import pytest

from knotconc.certificates import AtomCertificate, CertificateDB
from knotconc.errors import KnotSyntaxError
from knotconc.graph import run_report
from knotconc.intervals import IntInterval, VSeq
from knotconc.obstructions import Status, Target


@pytest.mark.parametrize(
    "text,expected_lines",
    [
        (
            "T(2,7)",
            [
                "Normal form: T(2,7)",
                "Alexander polynomial: t^3 - t^2 + t - 1 + t^-1 - t^-2 + t^-3",
                "tau: 3",
                "V_k: 2, 1, 1, 0",
                "nu+: 3",
                "d_1: -4",
                "Topologically slice: not certified",
            ],
        ),
        (
            "O",
            [
                "tau: 0",
                "V_k: 0",
                "Topologically slice: certified (Alexander polynomial 1)",
                "  identically 0",
            ],
        ),
        (
            "(3*Wh(T(2,3))) # cable(4,1,Wh(T(2,3)))*",
            [
                "tau: -1",
                "Topologically slice: certified (Alexander polynomial 1)",
                "- any_definite: obstructed",
            ],
        ),
    ],
)
def test_run_report(text, expected_lines):
    # execute
    report = run_report(text)

    # assert
    lines = report.text.splitlines()
    for line in expected_lines:
        assert line in lines
    assert [v.target for v in report.verdicts] == [
        Target.NEGATIVE_DEFINITE,
        Target.POSITIVE_DEFINITE,
        Target.ANY_DEFINITE,
    ]
    assert not report.gaps


def test_renderer_output_is_attached():
    # execute
    with patch("knotconc.graph.render_report", return_value="rendered") as fake_render:
        report = run_report("T(2,3)")

    # assert
    assert report.text == "rendered"
    fake_render.assert_called_once()
    assert report.normalized == "T(2,3)"


def test_signature_unavailable_is_reported(registered_db):
    # execute
    report = run_report("A_figure8", registered_db)

    # assert
    assert report.sigma is None
    assert report.sigma_note
    assert "Signature:" in report.text
    assert f"  unavailable: {report.sigma_note}" in report.text.splitlines()
    assert report.alexander == "-t + 3 - t^-1"


def test_gaps_are_listed():
    # prepare
    db = CertificateDB([AtomCertificate("K1", genus=1)])

    # execute
    report = run_report("K1", db)

    # assert
    assert report.gaps == ["K1: tau missing", "K1: alexander missing", "K1: v0 missing"]
    assert "Certificate gaps:" in report.text
    assert "- K1: tau missing" in report.text.splitlines()
    assert report.alexander is None
    assert "Alexander polynomial: unavailable" in report.text.splitlines()
    assert not report.topologically_slice
    assert report.tau == IntInterval(-1, 1)


def test_registered_slice_atoms_certify_topological_sliceness():
    # prepare
    db = CertificateDB([AtomCertificate("K1", tau=0, genus=1, topologically_slice=True)])

    # execute
    report = run_report("K1 # cable(2,1,K1)*", db)

    # assert
    assert report.alexander is None
    assert report.topologically_slice
    assert "Topologically slice: certified (registered atoms)" in report.text.splitlines()


def test_negative_cable_falls_back_to_wide_bounds():
    # execute
    report = run_report("cable(2,-1,T(2,3))")

    # assert
    assert report.tau == IntInterval()
    assert report.v_seq == VSeq.unknown()
    assert report.sigma is None
    assert all(v.status is Status.INCONCLUSIVE for v in report.verdicts)


def test_syntax_errors_propagate():
    # execute / assert
    with pytest.raises(KnotSyntaxError):
        run_report("T(2,4)")
