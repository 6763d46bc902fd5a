from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from knotconc.certificates import AtomCertificate, CertificateDB
from knotconc.errors import CableDomainError, SignatureJumpError, SignatureUnavailableError
from knotconc.families import WH, j_k, j_k_arc_samples, torus
from knotconc.knotexpr import Atom, Cable, Mirror, connected_sum
from knotconc.laurent import LaurentPoly
from knotconc.signatures import (
    SigFn,
    fold,
    sigma,
    sigma_torus,
    signature_combination_check,
    theta_to_x,
)

from tests.conftest import seifert_signature, torus_seifert_matrix

HALF = Fraction(1, 2)


@pytest.mark.parametrize(
    "p,q,expected",
    [(2, 3, -2), (2, 7, -6), (3, 4, -6), (3, 5, -8), (2, 5, -4)],
)
def test_torus_signature_at_minus_one(p, q, expected):
    # assert
    assert sigma_torus(p, q).value(HALF) == expected


def test_torus_signature_jump_points():
    # prepare
    sig = sigma_torus(2, 3)

    # assert
    assert sig.points == [Fraction(1, 6)]
    assert sig.table() == [(Fraction(0), Fraction(1, 3), 0), (Fraction(1, 3), Fraction(1), -2)]


def test_value_at_jump_raises():
    # prepare
    sig = sigma_torus(2, 3)

    # execute
    with pytest.raises(SignatureJumpError) as exc:
        sig.value(Fraction(5, 6))

    # assert
    assert exc.value.x == Fraction(1, 6)
    assert (exc.value.left, exc.value.right) == (0, -2)


def test_fold_and_theta():
    # assert
    assert fold(Fraction(3, 4)) == Fraction(1, 4)
    assert fold(Fraction(7, 5)) == Fraction(2, 5)
    assert theta_to_x(Fraction(2, 3)) == Fraction(1, 3)


def test_sigfn_validation():
    # execute / assert
    with pytest.raises(ValueError):
        SigFn(((Fraction(1, 3), 1), (Fraction(1, 4), 1)))
    with pytest.raises(ValueError):
        SigFn(((Fraction(3, 4), 1),))
    with pytest.raises(ValueError):
        SigFn.from_sampler([Fraction(1, 4)], lambda x: 2)


def test_mirror_and_sum():
    # prepare
    e = connected_sum(torus(2, 3), Mirror(torus(2, 5)))

    # execute
    sig = sigma(e)

    # assert
    assert sig.value(HALF) == -2 + 4
    assert sigma(Mirror(e)).value(HALF) == 2 - 4


def test_slice_sum_is_identically_zero():
    # assert
    assert sigma(connected_sum(torus(3, 4), Mirror(torus(3, 4)))).is_zero()


def test_whitehead_double_signature_vanishes():
    # assert
    assert sigma(WH).is_zero()


def test_cable_signature():
    # prepare
    sig = sigma(Cable(2, 1, torus(2, 3)))

    # assert
    assert sig.value(Fraction(1, 4)) == -2
    assert sig.value(HALF) == 0
    assert sigma(Cable(2, 3, torus(2, 3))).value(HALF) == -2


def test_cable_rejects_negative_q():
    # execute / assert
    with pytest.raises(CableDomainError):
        sigma(Cable(2, -1, torus(2, 3)))


def test_unavailable_for_opaque_atom():
    # prepare
    db = CertificateDB([AtomCertificate("K1", tau=0, genus=1, alexander=LaurentPoly.from_symmetric_list([-1, 3, -1]))])

    # execute / assert
    with pytest.raises(SignatureUnavailableError):
        sigma(Atom("K1"), db)


@pytest.mark.parametrize("k", [1, 2, 5, 20])
def test_jk_signature(k):
    # prepare
    sig = sigma(j_k(k))

    # assert
    assert sig.value(HALF) == 2
    assert [sig.value(x) for x in j_k_arc_samples(k)] == [-2, -2, -2]
    low, high = sig.extremes()
    assert low <= -2 and high >= 2


def test_independence_of_jk():
    # execute
    report = signature_combination_check([j_k(1), j_k(2)], 2)

    # assert
    assert report.independent
    assert report.checked == 5 * 5 - 1
    assert "independent at level 2" in report.summary()


def test_dependence_detected():
    # execute
    report = signature_combination_check([torus(2, 3), torus(2, 3)], 1)

    # assert
    assert not report.independent
    assert sorted(report.dependent) == [(-1, 1), (1, -1)]
    assert report.checked == 8


def test_independence_edge_cases():
    # assert
    assert signature_combination_check([], 3).checked == 0
    with pytest.raises(ValueError):
        signature_combination_check([torus(2, 3)], 0)


def test_seifert_matrix_shape():
    # execute
    matrix = torus_seifert_matrix(2, 5)
    larger = torus_seifert_matrix(3, 4)

    # assert
    assert matrix.shape == (4, 4)
    assert matrix[0, 0] == -1 and matrix[0, 1] == 1 and matrix[1, 0] == 0
    assert larger.shape == (6, 6)
    assert abs(round(float(np.linalg.det(larger)))) == 1
    with pytest.raises(ValueError):
        torus_seifert_matrix(2, 4)


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (2, 7), (2, 9), (3, 2), (3, 4), (3, 5), (4, 5)])
def test_counting_formula_matches_seifert_oracle(p, q):
    # prepare
    rng = random.Random(p * 100 + q)
    exact = sigma_torus(p, q)
    matrix = torus_seifert_matrix(p, q)
    checked = 0

    # execute / assert
    while checked < 100:
        x = Fraction(rng.randint(1, 9999), 20000)
        if not exact.is_regular(x):
            continue
        assert seifert_signature(matrix, float(x)) == exact.value(x)
        checked += 1


@pytest.mark.parametrize("p,q,expected", [(2, 3, -2), (3, 4, -6), (3, 5, -8), (4, 5, -8)])
def test_seifert_oracle_at_minus_one(p, q, expected):
    # execute
    value = seifert_signature(torus_seifert_matrix(p, q), 0.5)

    # assert
    assert value == expected
    assert sigma_torus(p, q).value(HALF) == expected
