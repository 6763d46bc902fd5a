"""Levine-Tristram signature functions as exact step functions.

Angles are rationals ``x`` with ``omega = exp(2*pi*i*x)``; by conjugation
symmetry every function lives on ``(0, 1/2]``.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from knotconc.certificates import CertificateDB, default_database
from knotconc.errors import CableDomainError, SignatureJumpError, SignatureUnavailableError
from knotconc.knotexpr import Atom, KnotExpr, Mirror, Sum, normalize, render, torus_parameters

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def fold(x: Fraction) -> Fraction:
    """Representative of ``x`` in ``[0, 1/2]`` under ``x -> -x`` and integer shifts."""
    x = Fraction(x) % 1
    return 1 - x if x > HALF else x


def theta_to_x(theta_over_pi: Fraction) -> Fraction:
    """Convert an angle ``theta = r * pi`` to ``x = theta / (2 pi)``."""
    return Fraction(theta_over_pi) / 2


@dataclass(frozen=True)
class SigFn:
    """Piecewise-constant signature; ``jumps`` are sorted ``(x, delta)`` pairs.

    Zero-delta entries mark singular points (roots of the Alexander
    polynomial) where the signature is not queried.
    """

    jumps: Tuple[Tuple[Fraction, int], ...] = ()
    _points: frozenset = field(default=frozenset(), init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        xs = [x for x, _ in self.jumps]
        if xs != sorted(xs) or len(set(xs)) != len(xs):
            raise ValueError("signature jumps must be strictly increasing")
        if any(not 0 < x <= HALF for x in xs):
            raise ValueError("signature jumps must lie in (0, 1/2]")
        object.__setattr__(self, "_points", frozenset(xs))

    @classmethod
    def zero(cls) -> "SigFn":
        return cls()

    @classmethod
    def from_sampler(cls, points: Iterable[Fraction], sampler: Callable[[Fraction], int]) -> "SigFn":
        """Build from singular points and a function valid between them."""
        xs = sorted({Fraction(x) for x in points if 0 < x <= HALF})
        if not xs:
            return cls()
        edges = [Fraction(0), *xs]
        if xs[-1] < HALF:
            edges.append(HALF)
        values = [sampler((a + b) / 2) for a, b in zip(edges, edges[1:])]
        if values[0] != 0:
            raise ValueError(f"signature must vanish near x = 0, got {values[0]}")
        jumps = []
        for index, x in enumerate(xs):
            after = values[index + 1] if index + 1 < len(values) else values[index]
            jumps.append((x, after - values[index]))
        return cls(tuple(jumps))

    @property
    def points(self) -> List[Fraction]:
        return [x for x, _ in self.jumps]

    def is_regular(self, x: Fraction) -> bool:
        y = fold(x)
        return y != 0 and y not in self._points

    def value(self, x: Fraction) -> int:
        y = fold(x)
        if y == 0:
            return 0
        total = 0
        for point, delta in self.jumps:
            if point < y:
                total += delta
            elif point == y:
                raise SignatureJumpError(y, total, total + delta)
            else:
                break
        return total

    def pieces(self) -> List[Tuple[Fraction, Fraction, int]]:
        """Open intervals ``(a, b)`` of ``(0, 1/2)`` with their constant value."""
        edges = [Fraction(0), *self.points]
        if edges[-1] < HALF:
            edges.append(HALF)
        out = []
        total = 0
        for index, (a, b) in enumerate(zip(edges, edges[1:])):
            if index > 0:
                total += self.jumps[index - 1][1]
            out.append((a, b, total))
        return out

    def sample_points(self) -> List[Fraction]:
        return [(a + b) / 2 for a, b, _ in self.pieces()]

    def extremes(self) -> Tuple[int, int]:
        values = [v for _, _, v in self.pieces()] or [0]
        return min(values), max(values)

    def __add__(self, other: "SigFn") -> "SigFn":
        merged: Dict[Fraction, int] = {}
        for x, delta in (*self.jumps, *other.jumps):
            merged[x] = merged.get(x, 0) + delta
        return SigFn(tuple(sorted(merged.items())))

    def __neg__(self) -> "SigFn":
        return SigFn(tuple((x, -delta) for x, delta in self.jumps))

    def scale(self, k: int) -> "SigFn":
        return SigFn(tuple((x, k * delta) for x, delta in self.jumps))

    def is_zero(self) -> bool:
        return all(v == 0 for _, _, v in self.pieces())

    def reparametrize(self, p: int) -> "SigFn":
        """The function ``x -> self(p * x)``."""
        if p == 1:
            return self
        preimages = set()
        for y in self.points:
            for m in range(p + 1):
                preimages.add((m + y) / p)
                preimages.add((m - y) / p)
        return SigFn.from_sampler(preimages, lambda x: self.value(p * x))

    def table(self) -> List[Tuple[Fraction, Fraction, int]]:
        """Pieces expressed in ``theta / pi`` coordinates."""
        return [(2 * a, 2 * b, v) for a, b, v in self.pieces()]


def _torus_value(p: int, q: int, x: Fraction) -> int:
    inside = 0
    for i in range(1, p):
        for j in range(1, q):
            s = Fraction(i, p) + Fraction(j, q)
            if x < s < x + 1:
                inside += 1
    return (p - 1) * (q - 1) - 2 * inside


@lru_cache(maxsize=None)
def sigma_torus(p: int, q: int) -> SigFn:
    """Signature of the positive ``(p, q)`` torus knot by lattice-point counting."""
    if p < 2 or q < 2:
        raise ValueError(f"sigma_torus needs p, q >= 2, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise ValueError(f"sigma_torus needs coprime p, q, got ({p}, {q})")
    points = {fold(Fraction(k, p * q)) for k in range(1, p * q) if k % p and k % q}
    return SigFn.from_sampler(points, lambda x: _torus_value(p, q, x))


class SignatureEvaluator:
    def __init__(self, db: Optional[CertificateDB] = None) -> None:
        self.db = db or default_database()
        self._memo: Dict[KnotExpr, SigFn] = {}

    def sigma(self, e: KnotExpr) -> SigFn:
        e = normalize(e)
        cached = self._memo.get(e)
        if cached is not None:
            return cached
        if isinstance(e, Atom):
            result = self._atom(e)
        elif isinstance(e, Mirror):
            result = -self.sigma(e.child)
        elif isinstance(e, Sum):
            result = SigFn.zero()
            for child in e.children:
                result = result + self.sigma(child)
        else:
            if e.q < 1:
                raise CableDomainError(f"cable({e.p},{e.q},...) needs q >= 1 for signatures")
            result = self.sigma(e.child).reparametrize(e.p)
            if e.q >= 2:
                result = result + sigma_torus(e.p, e.q)
        logger.debug("sigma(%s): %d jump points", render(e), len(result.jumps))
        self._memo[e] = result
        return result

    def _atom(self, e: Atom) -> SigFn:
        params = torus_parameters(e.name)
        if params is not None:
            return sigma_torus(*params)
        cert = self.db.lookup(e.name)
        if cert.alexander is not None and cert.alexander.is_one():
            return SigFn.zero()
        raise SignatureUnavailableError(f"no signature rule for atom {e.name!r}")


def sigma(e: KnotExpr, db: Optional[CertificateDB] = None) -> SigFn:
    return SignatureEvaluator(db).sigma(e)


# ---------------------------------------------------------------------------
# Independence check
# ---------------------------------------------------------------------------


@dataclass
class IndependenceReport:
    bound: int
    checked: int
    dependent: List[Tuple[int, ...]]

    @property
    def independent(self) -> bool:
        return not self.dependent

    def summary(self) -> str:
        if self.independent:
            return f"independent at level {self.bound} ({self.checked} vectors)"
        return f"dependent: {len(self.dependent)} of {self.checked} vectors give sigma = 0, e.g. {self.dependent[0]}"


def signature_combination_check(
    knots: Sequence[KnotExpr], bound: int, db: Optional[CertificateDB] = None
) -> IndependenceReport:
    """Search ``sum m_i K_i`` with ``0 < max |m_i| <= bound`` for vanishing signature."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if not knots:
        return IndependenceReport(bound, 0, [])
    evaluator = SignatureEvaluator(db)
    sigs = [evaluator.sigma(k) for k in knots]
    common = SigFn(tuple((x, 0) for x in sorted({x for s in sigs for x in s.points})))
    samples = common.sample_points()
    values = np.array([[s.value(x) for x in samples] for s in sigs], dtype=np.int64)
    coeffs = np.array(
        [m for m in itertools.product(range(-bound, bound + 1), repeat=len(knots)) if any(m)],
        dtype=np.int64,
    )
    combos = coeffs @ values
    zero_rows = np.all(combos == 0, axis=1)
    dependent = [tuple(int(c) for c in row) for row in coeffs[zero_rows]]
    logger.info("Independence check: %d vectors, %d dependent", len(coeffs), len(dependent))
    return IndependenceReport(bound, len(coeffs), dependent)


__all__ = [
    "IndependenceReport",
    "SigFn",
    "SignatureEvaluator",
    "fold",
    "sigma",
    "sigma_torus",
    "signature_combination_check",
    "theta_to_x",
]
