from __future__ import annotations

from fractions import Fraction
from unittest.mock import patch

import pytest

from knotconc.qform import (
    CORE_CHECKS,
    CharVector,
    Inertia,
    QMatrix,
    bcg_cobordism_check,
    c1_square,
    intersection_form_x,
    is_characteristic,
    signature_of_form,
)


@pytest.mark.parametrize("n", [1, 2, 3, 10])
def test_form_x(n):
    # prepare
    q = intersection_form_x(n)
    v = CharVector.of((-2, 0, 0))

    # assert
    assert q.determinant() == -2 * (n + 1)
    assert is_characteristic(q, v)
    assert c1_square(q, v) == Fraction(2, n + 1)
    assert signature_of_form(q) == Inertia(2, 1, 0)


@pytest.mark.parametrize(
    "rows,expected",
    [
        ([[0, 1], [1, 0]], Inertia(1, 1, 0)),
        ([[0, 0], [0, 0]], Inertia(0, 0, 2)),
        ([[-1, 0], [0, -3]], Inertia(0, 2, 0)),
        ([[2, 1], [1, 2]], Inertia(2, 0, 0)),
        ([[1, 2], [2, 4]], Inertia(1, 0, 1)),
        ([[0, 1, 0], [1, 0, 0], [0, 0, 5]], Inertia(2, 1, 0)),
    ],
)
def test_signature_of_form(rows, expected):
    # execute
    inertia = signature_of_form(QMatrix.of(rows))

    # assert
    assert inertia == expected
    assert inertia.rank == expected.n_plus + expected.n_minus


def test_inertia_signature():
    # assert
    assert Inertia(2, 1, 0).signature == 1


@pytest.mark.parametrize("rows", [[[1, 2], [3, 4]], [[1, 2, 3], [2, 1, 0]]])
def test_qmatrix_validation(rows):
    # execute / assert
    with pytest.raises(ValueError):
        QMatrix.of(rows)


def test_pair_and_congruent():
    # prepare
    q = intersection_form_x(2)

    # execute
    changed = q.congruent([(1, 0, 0), (1, 1, 0), (0, 0, 1)])

    # assert
    assert q.pair((1, -1, 4), (1, -1, 4)) == 6
    assert changed.entries == ((2, 2, 1), (2, 6, 2), (1, 2, 0))


def test_c1_square_needs_characteristic_and_nonsingular():
    # execute / assert
    with pytest.raises(ValueError):
        c1_square(intersection_form_x(1), CharVector.of((1, 0, 0)))
    with pytest.raises(ValueError):
        c1_square(QMatrix.of([[2, 2], [2, 2]]), CharVector.of((0, 0)))
    with pytest.raises(ValueError):
        is_characteristic(intersection_form_x(1), CharVector.of((0, 0)))


def test_intersection_form_rejects_n():
    # execute / assert
    with pytest.raises(ValueError):
        intersection_form_x(0)


@pytest.mark.parametrize("n", [1, 2, 5, 17, 50])
def test_bcg_replay(n):
    # execute
    report = bcg_cobordism_check(n)

    # assert
    assert report.passed
    assert set(CORE_CHECKS) <= {c.name for c in report.checks}
    assert report.check("c1-square").detail == f"c1^2 = {Fraction(2, n + 1)}, expected {Fraction(2, n + 1)}"
    assert report.check("spin-c-indices").detail == f"indices = (0, {n}, {n})"
    assert report.check("self-intersections").passed
    assert report.skipped


def test_bcg_report_unknown_check():
    # execute / assert
    with pytest.raises(KeyError):
        bcg_cobordism_check(1).check("nope")


@pytest.mark.parametrize("n", [1, 4])
def test_bcg_reduction_uses_surgery_index_pairs(n):
    # execute
    report = bcg_cobordism_check(n)

    # assert
    assert f"'K#J': ({n}, {n + 2})" in report.check("inequality-reduction").detail


def test_bcg_reduction_fails_on_wrong_index_pairs():
    # execute
    with patch("knotconc.qform.ni_wu_indices", side_effect=lambda p, q, i: (i, i)):
        report = bcg_cobordism_check(3)

    # assert
    assert not report.check("inequality-reduction").passed
    assert report.check("spin-c-indices").passed
    assert not report.passed
