"""Integer Laurent polynomials in one variable ``t``.

Polynomials are stored as sparse ``{exponent: coefficient}`` maps with zero
coefficients trimmed. Knot polynomials are kept in symmetric form, so
``a_i == a_{-i}`` and the value at ``t = 1`` is ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import sympy as sp

_T = sp.Symbol("t")


def _trim(coeffs: Mapping[int, int]) -> dict[int, int]:
    return {exp: c for exp, c in coeffs.items() if c != 0}


@dataclass(frozen=True)
class LaurentPoly:
    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted(_trim(coeffs).items())))

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls(((0, 1),))

    @classmethod
    def from_symmetric_list(cls, coeffs: Iterable[int]) -> "LaurentPoly":
        """Build from coefficients listed lowest to highest degree, centred at 0."""
        values = [int(c) for c in coeffs]
        if len(values) % 2 != 1:
            raise ValueError("symmetric coefficient list must have odd length")
        shift = len(values) // 2
        return cls.from_dict({i - shift: c for i, c in enumerate(values)})

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coefficient(self, exp: int) -> int:
        return self.as_dict().get(exp, 0)

    @property
    def top_degree(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    @property
    def bottom_degree(self) -> int:
        return self.terms[0][0] if self.terms else 0

    def is_one(self) -> bool:
        return self.terms == ((0, 1),)

    def is_symmetric(self) -> bool:
        coeffs = self.as_dict()
        return all(coeffs.get(-exp, 0) == c for exp, c in coeffs.items())

    def value_at_one(self) -> int:
        return sum(c for _, c in self.terms)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(out)

    def substitute_power(self, p: int) -> "LaurentPoly":
        """Return the polynomial in ``t**p``."""
        return LaurentPoly.from_dict({exp * p: c for exp, c in self.terms})

    def symmetric_list(self) -> list[int]:
        """Coefficients from ``-top`` to ``top`` (inverse of ``from_symmetric_list``)."""
        top = max(self.top_degree, -self.bottom_degree)
        coeffs = self.as_dict()
        return [coeffs.get(i, 0) for i in range(-top, top + 1)]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exp, c in reversed(self.terms):
            if exp == 0:
                body = str(abs(c))
            else:
                mono = "t" if exp == 1 else f"t^{exp}"
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def torsion_coefficient(poly: LaurentPoly, j: int) -> int:
    """``t_j = sum_{s > j} (s - j) a_s``; equals ``V_j`` for an L-space knot when ``j >= 0``."""
    return sum((exp - j) * c for exp, c in poly.terms if exp > j)


def torsion_coefficients(poly: LaurentPoly) -> list[int]:
    """``[t_0, ..., t_g]`` where ``g`` is the top degree; ``t_g`` is always 0."""
    return [torsion_coefficient(poly, j) for j in range(max(poly.top_degree, 0) + 1)]


@lru_cache(maxsize=None)
def torus_alexander(p: int, q: int) -> LaurentPoly:
    """Symmetrized Alexander polynomial of the (p, q) torus knot.

    Computed by exact division (t^{pq}-1)(t-1) / ((t^p-1)(t^q-1)).
    """
    if p < 1 or q < 1:
        raise ValueError(f"torus parameters must be positive, got ({p}, {q})")
    if sp.gcd(p, q) != 1:
        raise ValueError(f"torus parameters must be coprime, got ({p}, {q})")
    num = sp.Poly((_T ** (p * q) - 1) * (_T - 1), _T)
    den = sp.Poly((_T**p - 1) * (_T**q - 1), _T)
    quo, rem = num.div(den)
    if not rem.is_zero:
        raise ArithmeticError(f"torus division left a remainder for ({p}, {q})")
    coeffs = [int(c) for c in reversed(quo.all_coeffs())]
    shift = (len(coeffs) - 1) // 2
    return LaurentPoly.from_dict({i - shift: c for i, c in enumerate(coeffs)})
