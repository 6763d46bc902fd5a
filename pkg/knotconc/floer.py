"""Heegaard Floer concordance invariants: V_k, nu+, tau, d_1 and surgery d-invariants.

Every quantity is an interval enclosure derived from certificates by exact
rules; see ``FloerEvaluator`` for the propagation scheme.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from knotconc.certificates import CertificateDB, default_database, nu_equiv_reduce
from knotconc.config import get_partition_limit
from knotconc.errors import CableDomainError
from knotconc.intervals import (
    INF,
    IntInterval,
    RationalInterval,
    VSeq,
    interval_max,
)
from knotconc.knotexpr import (
    Atom,
    Cable,
    KnotExpr,
    Mirror,
    Sum,
    genus_bound,
    mirror,
    normalize,
    render,
)
from knotconc.laurent import torsion_coefficient, torsion_coefficients, torus_alexander

logger = logging.getLogger(__name__)

Block = Tuple[Tuple[KnotExpr, int], ...]


def wu_phi(p: int, q: int, i: int) -> int:
    """Representative of ``i - (p-1)(q-1)/2`` modulo ``q`` in ``[0, q-1]``."""
    if p < 1 or q < 1 or gcd(p, q) != 1:
        raise ValueError(f"wu_phi needs coprime p, q >= 1, got ({p}, {q})")
    if i < 0 or 2 * i > p * q:
        raise ValueError(f"wu_phi index i={i} outside 0 <= i <= pq/2 for ({p}, {q})")
    return (i - (p - 1) * (q - 1) // 2) % q


def ni_wu_indices(p: int, q: int, i: int) -> Tuple[int, int]:
    """V indices whose larger value enters d(S^3_{p/q}(K), i)."""
    return i // q, (p + q - 1 - i) // q


# ---------------------------------------------------------------------------
# Lens spaces
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _lens_d(p: int, q: int, i: int) -> Fraction:
    if p == 1:
        return Fraction(0)
    head = Fraction(-1, 4) + Fraction((2 * i + 1 - p - q) ** 2, 4 * p * q)
    return head - _lens_d(q, p % q, i % q)


def lens_d(p: int, q: int, i: int) -> Fraction:
    """d-invariant of p/q surgery on the unknot in Spin^c structure ``i``."""
    if p < 1 or q < 1:
        raise ValueError(f"lens_d needs p, q > 0, got ({p}, {q})")
    if gcd(p, q) != 1:
        raise ValueError(f"lens_d needs coprime p, q, got ({p}, {q})")
    if not 0 <= i < p:
        raise ValueError(f"lens_d index i={i} outside 0 <= i <= {p - 1}")
    return _lens_d(p, q, i)


def _check_lens_convention(limit: int = 10) -> None:
    if 4 * lens_d(2, 1, 0) != 1:
        raise RuntimeError("lens-space orientation check failed: 4d(S^3_2(O), 0) != 1")
    for n in range(1, limit + 1):
        if 4 * lens_d(2 * n, 1, n) != -1:
            raise RuntimeError(f"lens-space orientation check failed: 4d(S^3_{2 * n}(O), {n}) != -1")
        if 4 * lens_d(2 * n + 2, 1, n) != 1 - Fraction(2 * n, n + 1):
            raise RuntimeError(
                f"lens-space orientation check failed: 4d(S^3_{2 * n + 2}(O), {n}) != 1 - 2n/(n+1)"
            )


_check_lens_convention()


# ---------------------------------------------------------------------------
# Evaluator
# ---------------------------------------------------------------------------


def _require_positive_cable(e: Cable) -> None:
    if e.q < 1:
        raise CableDomainError(
            f"cable({e.p},{e.q},...) needs q >= 1 for invariant formulas"
        )


def _min_plus(a: Sequence[float], b: Sequence[float], length: int) -> List[float]:
    return [min(a[m] + b[k - m] for m in range(k + 1)) for k in range(length)]


class FloerEvaluator:
    """Evaluates Floer invariants for one certificate database.

    Memo tables live on the instance; create one evaluator per query batch.
    """

    def __init__(self, db: Optional[CertificateDB] = None, partition_limit: Optional[int] = None) -> None:
        self.db = db or default_database()
        self.partition_limit = partition_limit if partition_limit is not None else get_partition_limit()
        self._direct: Dict[KnotExpr, VSeq] = {}
        self._vseq: Dict[KnotExpr, VSeq] = {}
        self._block_lo: Dict[Block, VSeq] = {}
        self._block_hi: Dict[Block, VSeq] = {}
        self._powers: Dict[Tuple[KnotExpr, int, int], List[float]] = {}

    # -- V_k ---------------------------------------------------------------

    def v_seq(self, e: KnotExpr) -> VSeq:
        e = normalize(e)
        cached = self._vseq.get(e)
        if cached is not None:
            return cached
        seq = self._direct_v(e)
        reduced = nu_equiv_reduce(e, self.db)
        if reduced != e:
            seq = self._transfer(seq, self._direct_v(reduced))
            logger.debug("V via nu+-equivalence %s ~ %s", render(e), render(reduced))
        self._vseq[e] = seq
        return seq

    @staticmethod
    def _transfer(seq: VSeq, info: VSeq) -> VSeq:
        """Intersect V_0 and the nu+ range of a nu+-equivalent knot into ``seq``."""
        nu = info.nu_plus_bounds()
        length = max(len(seq.entries), 1, int(nu.lo))
        entries = [seq.at(k) for k in range(length)]
        entries[0] = entries[0].intersect(info.at(0))
        for k in range(int(nu.lo)):
            entries[k] = entries[k].intersect(IntInterval(1, INF))
        zero = seq.zero_from
        if nu.hi != INF:
            zero = int(nu.hi) if zero is None else min(zero, int(nu.hi))
        return VSeq.from_entries(entries, zero)

    def _direct_v(self, e: KnotExpr) -> VSeq:
        cached = self._direct.get(e)
        if cached is not None:
            return cached
        if isinstance(e, Atom):
            seq = self._atom_v(e)
        elif isinstance(e, Mirror):
            seq = self._mirror_v(e)
        elif isinstance(e, Sum):
            seq = self._sum_v(e)
        else:
            seq = self._cable_v(e)
        tau_lo = self._tau_base(e).lo
        if tau_lo >= 1:
            # tau <= nu+ forces V_k >= 1 below tau.
            count = int(tau_lo)
            entries = [seq.at(k).intersect(IntInterval(1, INF)) for k in range(count)]
            entries += list(seq.entries[count:])
            seq = VSeq.from_entries(entries, seq.zero_from)
        logger.debug("V(%s) = %s", render(e), seq)
        self._direct[e] = seq
        return seq

    def _atom_v(self, e: Atom) -> VSeq:
        cert = self.db.lookup(e.name)
        if cert.lspace and cert.alexander is not None:
            return VSeq.exact(torsion_coefficients(cert.alexander))
        entries = [] if cert.v0 is None else [IntInterval.exact(cert.v0)]
        return VSeq.from_entries(entries, cert.genus)

    def _mirror_v(self, e: Mirror) -> VSeq:
        child = e.child
        if isinstance(child, Cable):
            _require_positive_cable(child)
        entries: List[IntInterval] = []
        if isinstance(child, Atom):
            v0_mirror = self.db.lookup(child.name).v0_mirror
            if v0_mirror is not None:
                entries.append(IntInterval.exact(v0_mirror))
        return VSeq.from_entries(entries, genus_bound(child, self.db))

    def _cable_v(self, e: Cable) -> VSeq:
        _require_positive_cable(e)
        p, q = e.p, e.q
        companion = self.v_seq(e.child)
        torus = torus_alexander(p, q)
        entries = []
        for i in range(p * q // 2 + 1):
            phi = wu_phi(p, q, i)
            m = interval_max(companion.at(phi // p), companion.at((p + q - 1 - phi) // p))
            entries.append(m.shift(torsion_coefficient(torus, i)))
        return VSeq.from_entries(entries, genus_bound(e, self.db))

    # -- connected sums ----------------------------------------------------

    def _sum_v(self, e: Sum) -> VSeq:
        groups: Block = tuple(Counter(e.children).items())
        children = [self.v_seq(child) for child, _ in groups]
        zero: Optional[int] = None
        if all(seq.zero_from is not None for seq in children):
            zero = sum(seq.zero_from * count for seq, (_, count) in zip(children, groups))
        if zero is not None:
            length = zero
        else:
            length = sum((len(seq.entries) + 1) * count for seq, (_, count) in zip(children, groups)) + 1
        hi = self._upper(groups, length)
        lo = [0] * length
        for block, rest in self._blocks(groups):
            lower = self._block_lower(block)
            upper_seq = self._mirror_block_upper(rest)
            reach = max(len(upper_seq.entries), upper_seq.zero_from or 0) + 1
            for k in range(length):
                best = max(lower.at(k + n).lo - upper_seq.at(n).hi for n in range(reach))
                if best > lo[k]:
                    lo[k] = int(best)
        entries = [IntInterval(lo[k], hi[k]) for k in range(length)]
        return VSeq.from_entries(entries, zero)

    def _upper(self, groups: Block, length: int) -> List[float]:
        """Truncated min-plus convolution: V_{m+n}(A#B) <= V_m(A) + V_n(B)."""
        acc: Optional[List[float]] = None
        for child, count in groups:
            part = self._power(child, count, length)
            acc = part if acc is None else _min_plus(acc, part, length)
        return acc if acc is not None else [0] * length

    def _power(self, child: KnotExpr, count: int, length: int) -> List[float]:
        key = (child, count, length)
        cached = self._powers.get(key)
        if cached is not None:
            return cached
        base: List[float] = [self.v_seq(child).at(k).hi for k in range(length)]
        result: Optional[List[float]] = None
        remaining = count
        while remaining:
            if remaining & 1:
                result = base if result is None else _min_plus(result, base, length)
            remaining >>= 1
            if remaining:
                base = _min_plus(base, base, length)
        assert result is not None
        self._powers[key] = result
        return result

    def _blocks(self, groups: Block) -> List[Tuple[Block, Block]]:
        total = 1
        for _, count in groups:
            total *= count + 1
        splits: List[Tuple[Block, Block]] = []
        if total - 2 <= 2 ** self.partition_limit - 2:
            for take in itertools.product(*(range(count + 1) for _, count in groups)):
                if sum(take) == 0 or all(t == c for t, (_, c) in zip(take, groups)):
                    continue
                block = tuple((child, t) for t, (child, _) in zip(take, groups) if t)
                rest = tuple((child, c - t) for t, (child, c) in zip(take, groups) if c - t)
                splits.append((block, rest))
        else:
            logger.info("Partition budget exceeded (%d blocks); using singleton splits", total - 2)
            for index, (child, count) in enumerate(groups):
                rest = tuple(
                    (other, c - 1 if j == index else c)
                    for j, (other, c) in enumerate(groups)
                    if (c - 1 if j == index else c)
                )
                splits.append((((child, 1),), rest))
        return splits

    def _block_lower(self, block: Block) -> VSeq:
        if len(block) == 1 and block[0][1] == 1:
            return self.v_seq(block[0][0])
        cached = self._block_lo.get(block)
        if cached is not None:
            return cached
        expr = normalize(Sum(tuple(child for child, count in block for _ in range(count))))
        reduced = nu_equiv_reduce(expr, self.db)
        seq = VSeq.unknown()
        if reduced != expr:
            info = self._direct_v(reduced)
            v0_lo = int(info.at(0).lo)
            nu_lo = int(info.nu_plus_bounds().lo)
            length = max(v0_lo, nu_lo)
            seq = VSeq(
                tuple(
                    IntInterval(max(0, v0_lo - k, 1 if k < nu_lo else 0), INF)
                    for k in range(length)
                )
            )
        self._block_lo[block] = seq
        return seq

    def _mirror_block_upper(self, block: Block) -> VSeq:
        cached = self._block_hi.get(block)
        if cached is not None:
            return cached
        mirrored = tuple((mirror(child), count) for child, count in block)
        children = [self.v_seq(child) for child, _ in mirrored]
        zero: Optional[int] = None
        if all(seq.zero_from is not None for seq in children):
            zero = sum(seq.zero_from * count for seq, (_, count) in zip(children, mirrored))
            length = zero
        else:
            length = sum((len(seq.entries) + 1) * count for seq, (_, count) in zip(children, mirrored)) + 1
        hi = self._upper(mirrored, length)
        seq = VSeq(tuple(IntInterval(0, h) for h in hi), zero)
        self._block_hi[block] = seq
        return seq

    # -- tau ---------------------------------------------------------------

    def tau_equals_genus(self, e: KnotExpr) -> bool:
        e = normalize(e)
        if isinstance(e, Atom):
            return self.db.lookup(e.name).tau_equals_genus
        if isinstance(e, Mirror):
            return genus_bound(e.child, self.db) == 0 and self.tau_equals_genus(e.child)
        if isinstance(e, Sum):
            return all(self.tau_equals_genus(c) for c in e.children)
        return e.q >= 1 and self.tau_equals_genus(e.child)

    def _tau_base(self, e: KnotExpr) -> IntInterval:
        g = genus_bound(e, self.db)
        bound = IntInterval() if g is None else IntInterval(-g, g)
        if isinstance(e, Atom):
            tau = self.db.lookup(e.name).tau
            return bound if tau is None else bound.intersect(IntInterval.exact(tau))
        if isinstance(e, Mirror):
            if isinstance(e.child, Cable):
                _require_positive_cable(e.child)
            return bound.intersect(-self._tau_base(e.child))
        if isinstance(e, Sum):
            total = IntInterval.exact(0)
            for child in e.children:
                total = total + self._tau_base(child)
            return bound.intersect(total)
        _require_positive_cable(e)
        child_tau = self._tau_base(e.child)
        if self.tau_equals_genus(e.child) and child_tau.is_exact:
            return bound.intersect(child_tau.scale(e.p).shift((e.p - 1) * (e.q - 1) // 2))
        return bound

    def tau(self, e: KnotExpr) -> IntInterval:
        e = normalize(e)
        base = self._tau_base(e)
        upper = self.v_seq(e).nu_plus_bounds().hi
        lower = -self.v_seq(mirror(e)).nu_plus_bounds().hi
        return base.intersect(IntInterval(lower, upper))

    # -- derived -----------------------------------------------------------

    def nu_plus(self, e: KnotExpr) -> IntInterval:
        bounds = self.v_seq(e).nu_plus_bounds()
        return IntInterval(max(bounds.lo, self.tau(e).lo, 0), bounds.hi)

    def d1(self, e: KnotExpr) -> IntInterval:
        v0 = self.v_seq(e).at(0)
        return IntInterval(-2 * v0.hi, -2 * v0.lo)

    def surgery_d(self, e: KnotExpr, p: int, q: int, i: int) -> RationalInterval:
        """Ni-Wu formula: lens term minus twice the larger of two V entries."""
        base = lens_d(p, q, i)
        seq = self.v_seq(e)
        low, high = ni_wu_indices(p, q, i)
        m = interval_max(seq.at(low), seq.at(high))
        return RationalInterval.affine(base, -2, m)

    def surgery_table(self, e: KnotExpr, p: int, q: int) -> List[RationalInterval]:
        return [self.surgery_d(e, p, q, i) for i in range(p)]


def v_seq(e: KnotExpr, db: Optional[CertificateDB] = None) -> VSeq:
    return FloerEvaluator(db).v_seq(e)


def tau(e: KnotExpr, db: Optional[CertificateDB] = None) -> IntInterval:
    return FloerEvaluator(db).tau(e)


def nu_plus(e: KnotExpr, db: Optional[CertificateDB] = None) -> IntInterval:
    return FloerEvaluator(db).nu_plus(e)


def d1(e: KnotExpr, db: Optional[CertificateDB] = None) -> IntInterval:
    return FloerEvaluator(db).d1(e)


def surgery_d(e: KnotExpr, p: int, q: int, i: int, db: Optional[CertificateDB] = None) -> RationalInterval:
    return FloerEvaluator(db).surgery_d(e, p, q, i)


__all__ = [
    "FloerEvaluator",
    "d1",
    "lens_d",
    "ni_wu_indices",
    "nu_plus",
    "surgery_d",
    "tau",
    "torsion_coefficient",
    "torsion_coefficients",
    "v_seq",
    "wu_phi",
]
