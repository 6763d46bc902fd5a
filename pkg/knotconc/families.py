"""Constructors for the knot families used by the reproduction suites."""

from __future__ import annotations

from fractions import Fraction
from typing import List

from knotconc.knotexpr import (
    WH_TREFOIL_NAME,
    Atom,
    Cable,
    KnotExpr,
    Mirror,
    connected_power,
    connected_sum,
    torus_name,
)

WH = Atom(WH_TREFOIL_NAME)


def torus(p: int, q: int) -> KnotExpr:
    return Atom(torus_name(p, q))


def k_n(n: int) -> KnotExpr:
    """``(3 Wh) # (Wh_{n+3,1})*``: topologically slice, tau = -n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return connected_sum(connected_power(WH, 3), Mirror(Cable(n + 3, 1, WH)))


def k_kl(k: int, l: int) -> KnotExpr:
    """``((2k+1) Wh) # (Wh_{l+2k+1,1})*``: nu+ >= k and tau = -l."""
    if k < 1 or l < 1:
        raise ValueError(f"k and l must be >= 1, got ({k}, {l})")
    return connected_sum(connected_power(WH, 2 * k + 1), Mirror(Cable(l + 2 * k + 1, 1, WH)))


def j_k(k: int) -> KnotExpr:
    """``T(2,2k+9) # ((k+5) T(2,3))*``: signature 2 at -1 and -2 just past the first jumps."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return connected_sum(torus(2, 2 * k + 9), Mirror(connected_power(torus(2, 3), k + 5)))


def j_k_arc(k: int) -> tuple[Fraction, Fraction]:
    """Open x-interval where sigma(J_k) = -2 (theta in (pi/m, 3 pi/m), m = 2k+9)."""
    m = 2 * k + 9
    return Fraction(1, 2 * m), Fraction(3, 2 * m)


def j_k_arc_samples(k: int, count: int = 3) -> List[Fraction]:
    """``count`` evenly spaced interior points of the J_k arc."""
    lo, hi = j_k_arc(k)
    return [lo + (hi - lo) * Fraction(i, count + 1) for i in range(1, count + 1)]


def wh_trefoil() -> KnotExpr:
    """Positive untwisted Whitehead double of the right-handed trefoil."""
    return WH
