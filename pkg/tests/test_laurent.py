from __future__ import annotations

import pytest

from knotconc.laurent import LaurentPoly, torsion_coefficient, torsion_coefficients, torus_alexander


@pytest.mark.parametrize(
    "p,q,coeffs",
    [
        (2, 3, [1, -1, 1]),
        (2, 5, [1, -1, 1, -1, 1]),
        (3, 4, [1, -1, 0, 1, 0, -1, 1]),
        (1, 7, [1]),
    ],
)
def test_torus_alexander(p, q, coeffs):
    # execute
    poly = torus_alexander(p, q)

    # assert
    assert poly == LaurentPoly.from_symmetric_list(coeffs)
    assert poly.is_symmetric()
    assert poly.value_at_one() == 1
    assert poly.symmetric_list() == coeffs


@pytest.mark.parametrize("p,q", [(2, 4), (0, 3)])
def test_torus_alexander_rejects_bad_parameters(p, q):
    # execute / assert
    with pytest.raises(ValueError):
        torus_alexander(p, q)


@pytest.mark.parametrize(
    "p,q,expected",
    [
        (2, 3, [1, 0]),
        (2, 7, [2, 1, 1, 0]),
        (3, 4, [1, 1, 1, 0]),
    ],
)
def test_torsion_coefficients(p, q, expected):
    # assert
    assert torsion_coefficients(torus_alexander(p, q)) == expected


def test_torsion_coefficient_below_zero_degree():
    # prepare
    poly = torus_alexander(2, 3)

    # execute
    value = torsion_coefficient(poly, -1)

    # assert
    assert value == 2 * 1 + 1 * -1


def test_substitute_power_and_product():
    # prepare
    poly = torus_alexander(2, 3)

    # execute
    product = poly.substitute_power(2) * poly

    # assert
    assert str(product) == "t^3 - t^2 + 1 - t^-2 + t^-3"


def test_from_symmetric_list_needs_odd_length():
    # execute / assert
    with pytest.raises(ValueError):
        LaurentPoly.from_symmetric_list([1, 2])


def test_one_prints_and_trims():
    # assert
    assert LaurentPoly.one().is_one()
    assert str(LaurentPoly.one()) == "1"
    assert LaurentPoly.from_dict({2: 0, 0: 1}).is_one()
    assert str(LaurentPoly.from_dict({1: -2, -1: -2, 0: 5})) == "-2t + 5 - 2t^-1"
