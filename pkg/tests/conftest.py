"""Test fixtures for the knotconc test suite."""

from __future__ import annotations

import random
from math import gcd
from typing import Callable

import numpy as np
import pytest

from knotconc.certificates import AtomCertificate, CertificateDB
from knotconc.knotexpr import WH_TREFOIL_NAME, Atom, Cable, KnotExpr, Mirror, Sum
from knotconc.laurent import LaurentPoly

SEED = 20240611

BASE_ATOMS = ("O", "T(2,3)", "T(2,5)", "T(3,4)", WH_TREFOIL_NAME)

# Registered atoms carry the data of real knots so every bound stays consistent.
REGISTERED = (
    AtomCertificate("A_trefoil", 1, 1, True, False, LaurentPoly.from_symmetric_list([1, -1, 1]), 1, 0),
    AtomCertificate("A_cinquefoil", 2, 2, True, False, LaurentPoly.from_symmetric_list([1, -1, 1, -1, 1]), 1, 0),
    AtomCertificate("A_double", 1, 1, True, False, LaurentPoly.one(), 1, 0, True),
    AtomCertificate("A_figure8", 0, 1, False, False, LaurentPoly.from_symmetric_list([-1, 3, -1]), 0, 0),
    AtomCertificate("A_lefty", -1, 1, False, False, LaurentPoly.from_symmetric_list([1, -1, 1]), 0, 1),
)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)


@pytest.fixture
def registered_db() -> CertificateDB:
    return CertificateDB(REGISTERED)


def _random_expr(rng: random.Random, names: tuple, depth: int, positive_cables: bool) -> KnotExpr:
    roll = rng.random()
    if depth == 0 or roll < 0.35:
        return Atom(rng.choice(names))
    if roll < 0.55:
        return Mirror(_random_expr(rng, names, depth - 1, positive_cables))
    if roll < 0.8:
        size = rng.randint(2, 3)
        return Sum(tuple(_random_expr(rng, names, depth - 1, positive_cables) for _ in range(size)))
    p = rng.choice((2, 3))
    choices = [q for q in (1, 2, 3, 5) if gcd(p, q) == 1]
    if not positive_cables:
        choices += [-q for q in choices]
    return Cable(p, rng.choice(choices), _random_expr(rng, names, depth - 1, positive_cables))


@pytest.fixture
def expr_factory() -> Callable[..., KnotExpr]:
    """``factory(rng, depth=2, positive_cables=True, names=BASE_ATOMS)``."""

    def factory(
        rng: random.Random, depth: int = 2, positive_cables: bool = True, names: tuple = BASE_ATOMS
    ) -> KnotExpr:
        return _random_expr(rng, names, depth, positive_cables)

    return factory


def _bidiagonal(n: int) -> np.ndarray:
    size = n - 1
    return -np.eye(size) + np.eye(size, k=1)


def torus_seifert_matrix(p: int, q: int) -> np.ndarray:
    """Seifert matrix of T(p, q) on its fibre surface, a tensor product of two bidiagonal blocks.

    For p = 2 this is the familiar -1 diagonal, 1 superdiagonal matrix of T(2, q).
    """
    if p < 2 or q < 2 or gcd(p, q) != 1:
        raise ValueError(f"T({p}, {q}) needs coprime p, q >= 2")
    return -np.kron(_bidiagonal(p), _bidiagonal(q))


def seifert_signature(seifert: np.ndarray, x: float, tol: float = 1e-9) -> int:
    """Signature of ``(1 - w) V + (1 - conj w) V^T`` at ``w = exp(2 pi i x)``."""
    omega = np.exp(2j * np.pi * x)
    form = (1 - omega) * seifert + (1 - np.conj(omega)) * seifert.T
    eigenvalues = np.linalg.eigvalsh(form)
    return int(np.sum(eigenvalues > tol) - np.sum(eigenvalues < -tol))
