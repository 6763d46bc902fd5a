"""Interval-valued integers, rationals and V_k sequences.

Unbounded ends use ``math.inf``; every interval is a sound enclosure of the
true value, so "unknown" is simply a wide interval.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Union

from knotconc.errors import InconsistentBoundsError

logger = logging.getLogger(__name__)

INF = math.inf

Bound = Union[int, float]
RationalBound = Union[Fraction, float]


def _fmt(bound: object) -> str:
    if bound == INF:
        return "+inf"
    if bound == -INF:
        return "-inf"
    return str(bound)


@dataclass(frozen=True)
class IntInterval:
    lo: Bound = -INF
    hi: Bound = INF

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise InconsistentBoundsError(f"empty interval [{_fmt(self.lo)}, {_fmt(self.hi)}]")

    @classmethod
    def exact(cls, value: int) -> "IntInterval":
        return cls(value, value)

    @classmethod
    def nonnegative(cls) -> "IntInterval":
        return cls(0, INF)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise ValueError(f"interval {self} is not exact")
        return int(self.lo)

    def contains(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    def intersect(self, other: "IntInterval") -> "IntInterval":
        return IntInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def __add__(self, other: "IntInterval") -> "IntInterval":
        return IntInterval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "IntInterval":
        return IntInterval(-self.hi, -self.lo)

    def scale(self, k: int) -> "IntInterval":
        if k == 0:
            return IntInterval.exact(0)
        lo, hi = self.lo * k, self.hi * k
        return IntInterval(min(lo, hi), max(lo, hi))

    def shift(self, c: int) -> "IntInterval":
        return IntInterval(self.lo + c, self.hi + c)

    def __str__(self) -> str:
        if self.is_exact:
            return str(int(self.lo))
        left = "(" if self.lo == -INF else "["
        right = ")" if self.hi == INF else "]"
        return f"{left}{_fmt(self.lo)}, {_fmt(self.hi)}{right}"


def interval_max(a: IntInterval, b: IntInterval) -> IntInterval:
    return IntInterval(max(a.lo, b.lo), max(a.hi, b.hi))


@dataclass(frozen=True)
class RationalInterval:
    lo: RationalBound = -INF
    hi: RationalBound = INF

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise InconsistentBoundsError(f"empty interval [{_fmt(self.lo)}, {_fmt(self.hi)}]")

    @classmethod
    def exact(cls, value: Fraction) -> "RationalInterval":
        return cls(Fraction(value), Fraction(value))

    @classmethod
    def affine(cls, base: Fraction, coeff: int, x: IntInterval) -> "RationalInterval":
        """The set ``base + coeff * x``."""
        ends = []
        for bound in (x.lo, x.hi):
            if math.isinf(bound):
                ends.append(math.copysign(INF, bound * coeff) if coeff else Fraction(base))
            else:
                ends.append(Fraction(base) + coeff * int(bound))
        return cls(min(ends), max(ends))

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise ValueError(f"interval {self} is not exact")
        return Fraction(self.lo)

    def __str__(self) -> str:
        if self.is_exact:
            return str(self.lo)
        return f"[{_fmt(self.lo)}, {_fmt(self.hi)}]"


@dataclass(frozen=True)
class VSeq:
    """Interval enclosure of ``V_0, V_1, ...``.

    ``entries`` is an explicit prefix; ``zero_from`` (when known) is an index
    from which every V_k is 0. Past the prefix, entries follow the
    monotonicity rules from the last explicit one.
    """

    entries: tuple[IntInterval, ...] = ()
    zero_from: int | None = None

    @classmethod
    def unknown(cls) -> "VSeq":
        return cls()

    @classmethod
    def exact(cls, values: Sequence[int]) -> "VSeq":
        zero = next((k for k, v in enumerate(values) if v == 0), None)
        kept = values if zero is None else values[:zero]
        return cls(tuple(IntInterval.exact(v) for v in kept), zero).closure()

    @classmethod
    def from_entries(cls, entries: Iterable[IntInterval], zero_from: int | None = None) -> "VSeq":
        return cls(tuple(entries), zero_from).closure()

    def at(self, k: int) -> IntInterval:
        if k < 0:
            raise ValueError(f"V_k needs k >= 0, got {k}")
        if self.zero_from is not None and k >= self.zero_from:
            return IntInterval.exact(0)
        if k < len(self.entries):
            return self.entries[k]
        if not self.entries:
            return IntInterval.nonnegative()
        last = self.entries[-1]
        steps = k - (len(self.entries) - 1)
        return IntInterval(max(0, last.lo - steps), last.hi)

    def prefix(self, length: int) -> List[IntInterval]:
        return [self.at(k) for k in range(length)]

    @property
    def is_exact(self) -> bool:
        return self.zero_from is not None and all(
            self.at(k).is_exact for k in range(self.zero_from)
        )

    def closure(self) -> "VSeq":
        """Fixed point of ``V_k - 1 <= V_{k+1} <= V_k`` applied to both bounds."""
        length = max(len(self.entries), self.zero_from or 0)
        lo: List[Bound] = []
        hi: List[Bound] = []
        for k in range(length):
            entry = self.at(k)
            lo.append(max(0, entry.lo))
            hi.append(entry.hi)
        if self.zero_from is not None:
            lo.append(0)
            hi.append(0)
        n = len(lo)
        changed = True
        while changed:
            changed = False
            for k in reversed(range(n - 1)):
                new_lo = max(lo[k], lo[k + 1])
                new_hi = min(hi[k], hi[k + 1] + 1)
                if (new_lo, new_hi) != (lo[k], hi[k]):
                    lo[k], hi[k] = new_lo, new_hi
                    changed = True
            for k in range(n - 1):
                new_lo = max(lo[k + 1], lo[k] - 1)
                new_hi = min(hi[k + 1], hi[k])
                if (new_lo, new_hi) != (lo[k + 1], hi[k + 1]):
                    lo[k + 1], hi[k + 1] = new_lo, new_hi
                    changed = True
            for k in range(n):
                if lo[k] > hi[k]:
                    raise InconsistentBoundsError(
                        f"V_{k} bounds became empty: [{_fmt(lo[k])}, {_fmt(hi[k])}]"
                    )
        zero = next((k for k in range(n) if hi[k] == 0), self.zero_from)
        stop = n if zero is None else zero
        entries = tuple(IntInterval(lo[k], hi[k]) for k in range(min(stop, n)))
        return VSeq(entries, zero)

    def intersect(self, other: "VSeq") -> "VSeq":
        zeros = [z for z in (self.zero_from, other.zero_from) if z is not None]
        length = max(len(self.entries), len(other.entries))
        entries = [self.at(k).intersect(other.at(k)) for k in range(length)]
        return VSeq(tuple(entries), min(zeros) if zeros else None).closure()

    def nu_plus_bounds(self) -> IntInterval:
        """nu+ = least k with V_k = 0, read off the enclosure."""
        lo = 0
        while self.at(lo).lo >= 1:
            lo += 1
        hi = INF if self.zero_from is None else self.zero_from
        return IntInterval(lo, hi)

    def __str__(self) -> str:
        shown = [str(e) for e in self.entries]
        if self.zero_from is None:
            return ", ".join(shown + ["..."])
        return ", ".join(shown + ["0"])
