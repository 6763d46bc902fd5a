from __future__ import annotations

from fractions import Fraction
from unittest.mock import patch

import pytest

from knotconc.certificates import AtomCertificate, CertificateDB
from knotconc.errors import CableDomainError
from knotconc.families import WH, k_kl, k_n, torus
from knotconc.floer import FloerEvaluator, d1, lens_d, ni_wu_indices, nu_plus, surgery_d, tau, v_seq, wu_phi
from knotconc.intervals import INF, IntInterval, RationalInterval, VSeq
from knotconc.knotexpr import UNKNOT, Atom, Cable, Mirror, connected_power, connected_sum

T23 = torus(2, 3)


@pytest.mark.parametrize(
    "p,q,i,expected",
    [
        (1, 1, 0, Fraction(0)),
        (2, 1, 0, Fraction(1, 4)),
        (2, 1, 1, Fraction(-1, 4)),
        (2, 3, 0, Fraction(1, 4)),
        (2, 3, 1, Fraction(-1, 4)),
    ],
)
def test_lens_d_values(p, q, i, expected):
    # assert
    assert lens_d(p, q, i) == expected


@pytest.mark.parametrize("n", [1, 2, 7, 50, 100])
def test_lens_identities(n):
    # assert
    assert 4 * lens_d(2 * n, 1, n) == -1
    assert 4 * lens_d(2 * n + 2, 1, n) == 1 - Fraction(2 * n, n + 1)


@pytest.mark.parametrize("p,q,i", [(0, 1, 0), (4, 2, 0), (3, 1, 3), (3, 1, -1)])
def test_lens_d_rejects(p, q, i):
    # execute / assert
    with pytest.raises(ValueError):
        lens_d(p, q, i)


@pytest.mark.parametrize("p,q,i", [(2, 4, 0), (2, 3, 4), (0, 3, 0)])
def test_wu_phi_rejects(p, q, i):
    # execute / assert
    with pytest.raises(ValueError):
        wu_phi(p, q, i)


def test_wu_phi_value():
    # assert
    assert wu_phi(2, 3, 0) == 2
    assert wu_phi(3, 1, 1) == 0


@pytest.mark.parametrize(
    "e,prefix",
    [
        (torus(2, 7), [2, 1, 1, 0]),
        (torus(3, 4), [1, 1, 1, 0]),
        (UNKNOT, [0, 0]),
        (Cable(2, 3, T23), [1, 1, 1, 0]),
        (Cable(3, 1, T23), [1, 1, 1, 0]),
    ],
)
def test_exact_v_sequences(e, prefix):
    # execute
    seq = v_seq(e)

    # assert
    assert seq.is_exact
    assert [seq.at(k).value for k in range(len(prefix))] == prefix


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 10])
def test_v0_of_whitehead_sums_matches_torus_knot(k):
    # execute
    v0 = v_seq(connected_power(WH, k)).at(0)

    # assert
    assert v0 == IntInterval.exact((k + 1) // 2)


def test_mirror_of_lspace_knot_is_bounded_by_genus():
    # execute
    seq = v_seq(Mirror(torus(2, 5)))

    # assert
    assert seq.at(0) == IntInterval(0, 2)
    assert seq.zero_from == 2


@pytest.mark.parametrize(
    "e,expected",
    [
        (torus(2, 7), 3),
        (Mirror(torus(2, 7)), -3),
        (connected_sum(torus(2, 3), torus(3, 4)), 4),
        (Cable(2, 3, T23), 3),
        (WH, 1),
        (UNKNOT, 0),
    ],
)
def test_tau_exact(e, expected):
    # assert
    assert tau(e) == IntInterval.exact(expected)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_kn_invariants(n):
    # prepare
    ev = FloerEvaluator()
    e = k_n(n)

    # execute
    t = ev.tau(e)
    v0 = ev.v_seq(e).at(0)

    # assert
    assert t == IntInterval.exact(-n)
    assert v0.lo >= 1
    assert ev.d1(e).hi <= -2


@pytest.mark.parametrize("k,l", [(1, 1), (2, 3), (3, 1)])
def test_kkl_nu_plus(k, l):
    # prepare
    ev = FloerEvaluator()
    e = k_kl(k, l)

    # assert
    assert ev.tau(e) == IntInterval.exact(-l)
    assert ev.nu_plus(e).lo >= k


def test_singleton_splits_keep_kn_bound():
    # prepare
    ev = FloerEvaluator(partition_limit=1)

    # execute
    with patch("knotconc.floer.logger") as fake_logger:
        v0 = ev.v_seq(k_n(1)).at(0)

    # assert
    assert v0.lo >= 1
    assert fake_logger.info.called


def test_nu_plus_and_d1():
    # assert
    assert nu_plus(torus(2, 7)) == IntInterval.exact(3)
    assert d1(T23) == IntInterval.exact(-2)
    assert d1(UNKNOT) == IntInterval.exact(0)


def test_surgery_on_unknot():
    # execute
    rows = FloerEvaluator().surgery_table(UNKNOT, 2, 1)

    # assert
    assert rows == [RationalInterval.exact(Fraction(1, 4)), RationalInterval.exact(Fraction(-1, 4))]


def test_surgery_plus_one_is_minus_two_v0():
    # assert
    assert surgery_d(T23, 1, 1, 0) == RationalInterval.exact(Fraction(-2))


def test_surgery_with_q_above_one():
    # execute
    rows = FloerEvaluator().surgery_table(T23, 2, 3)

    # assert
    assert rows == [RationalInterval.exact(Fraction(-7, 4)), RationalInterval.exact(Fraction(-9, 4))]


def test_surgery_interval_for_partial_data():
    # prepare
    db = CertificateDB([AtomCertificate("K1", tau=0, genus=1)])

    # execute
    value = surgery_d(Atom("K1"), 1, 1, 0, db)

    # assert
    assert value == RationalInterval(Fraction(-2), Fraction(0))


def test_partial_certificate_gives_interval():
    # prepare
    db = CertificateDB([AtomCertificate("K1", genus=2)])
    ev = FloerEvaluator(db)

    # assert
    assert ev.v_seq(Atom("K1")).at(0) == IntInterval(0, 2)
    assert ev.tau(Atom("K1")) == IntInterval(-2, 2)


def test_unbounded_without_genus():
    # prepare
    db = CertificateDB([AtomCertificate("K1", v0=1)])

    # execute
    seq = FloerEvaluator(db).v_seq(Atom("K1"))

    # assert
    assert seq.at(0) == IntInterval.exact(1)
    assert seq.zero_from is None
    assert seq.at(3) == IntInterval(0, 1)
    assert FloerEvaluator(db).nu_plus(Atom("K1")).hi == INF


@pytest.mark.parametrize("e", [Cable(2, -1, T23), Mirror(Cable(2, -3, T23))])
def test_negative_cables_are_rejected(e):
    # execute / assert
    with pytest.raises(CableDomainError):
        v_seq(e)


@pytest.mark.parametrize(
    "p,q,i,expected",
    [(2, 1, 0, (0, 2)), (8, 1, 3, (3, 5)), (10, 1, 4, (4, 6)), (5, 2, 3, (1, 1)), (2, 3, 1, (0, 1))],
)
def test_ni_wu_indices(p, q, i, expected):
    # assert
    assert ni_wu_indices(p, q, i) == expected


def test_surgery_reads_the_ni_wu_indices():
    # execute
    with patch("knotconc.floer.ni_wu_indices", return_value=(0, 0)) as fake_indices:
        value = surgery_d(T23, 2, 1, 1)

    # assert
    fake_indices.assert_called_once_with(2, 1, 1)
    assert value == RationalInterval.exact(Fraction(-9, 4))
    assert surgery_d(T23, 2, 1, 1) == RationalInterval.exact(Fraction(-1, 4))


def test_nested_whitehead_sums_agree_with_torus_companion():
    # prepare
    ev = FloerEvaluator()

    # execute
    nested = ev.v_seq(Cable(2, 1, connected_power(WH, 3)))
    reference = ev.v_seq(Cable(2, 1, torus(2, 7)))

    # assert
    assert reference.at(0) == IntInterval.exact(2)
    assert nested.at(0) == reference.at(0)


def test_block_lower_bounds_only_for_reducible_blocks():
    # prepare
    ev = FloerEvaluator()

    # execute
    mixed = ev._block_lower(((T23, 1), (torus(2, 5), 1)))
    doubled = ev._block_lower(((WH, 2),))

    # assert
    assert mixed == VSeq.unknown()
    assert (doubled.at(0).lo, doubled.at(1).lo) == (1, 1)
