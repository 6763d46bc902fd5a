"""Symbolic knot expressions: types, parser, normal form and Alexander polynomial.

Grammar (whitespace insensitive)::

    expr := term ('#' term)*
    term := INT '*' term | primary '*'*
    primary := atom | 'mirror(' expr ')' | 'cable(' INT ',' INT ',' expr ')' | '(' expr ')'
    atom := 'O' | 'T(' INT ',' INT ')' | 'Wh(' atom ')' | 'Wh' | IDENT

A postfix ``*`` is the mirror image and ``k*K`` is the k-fold connected sum.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from math import gcd
from typing import TYPE_CHECKING, Callable, Iterator, Union

from knotconc.errors import (
    CableDomainError,
    CertificateError,
    KnotSyntaxError,
    UnknownAtomError,
)
from knotconc.laurent import LaurentPoly, torus_alexander

if TYPE_CHECKING:
    from knotconc.certificates import CertificateDB

logger = logging.getLogger(__name__)

UNKNOT_NAME = "O"
WH_TREFOIL_NAME = "Wh(T(2,3))"
_TORUS_RE = re.compile(r"^T\((\d+),(\d+)\)$")


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Mirror:
    child: "KnotExpr"


@dataclass(frozen=True)
class Sum:
    children: tuple["KnotExpr", ...]

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise ValueError("a connected sum needs at least two summands")


@dataclass(frozen=True)
class Cable:
    p: int
    q: int
    child: "KnotExpr"

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValueError(f"cable requires p >= 1, got p={self.p}")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"cable requires gcd(p, q) = 1, got ({self.p}, {self.q})")


KnotExpr = Union[Atom, Mirror, Sum, Cable]

UNKNOT = Atom(UNKNOT_NAME)


def torus_name(p: int, q: int) -> str:
    a, b = sorted((p, q))
    if a == 1:
        return UNKNOT_NAME
    return f"T({a},{b})"


def torus_parameters(name: str) -> tuple[int, int] | None:
    """Return ``(p, q)`` for a canonical torus-knot atom name, else ``None``."""
    match = _TORUS_RE.match(name)
    if match is None:
        return None
    p, q = int(match.group(1)), int(match.group(2))
    if p < 2 or q < 2 or gcd(p, q) != 1:
        return None
    return p, q


# ---------------------------------------------------------------------------
# Normal form
# ---------------------------------------------------------------------------


def mirror(e: KnotExpr) -> KnotExpr:
    """Normalized mirror image of a normalized expression."""
    if isinstance(e, Mirror):
        return e.child
    if isinstance(e, Sum):
        return Sum(tuple(mirror(c) for c in e.children))
    if e == UNKNOT:
        return e
    return Mirror(e)


def normalize(e: KnotExpr) -> KnotExpr:
    if isinstance(e, Atom):
        return e
    if isinstance(e, Mirror):
        return mirror(normalize(e.child))
    if isinstance(e, Sum):
        flat: list[KnotExpr] = []
        for child in e.children:
            c = normalize(child)
            if isinstance(c, Sum):
                flat.extend(c.children)
            elif c != UNKNOT:
                flat.append(c)
        if not flat:
            return UNKNOT
        if len(flat) == 1:
            return flat[0]
        return Sum(tuple(flat))
    if isinstance(e, Cable):
        child = normalize(e.child)
        if e.p == 1:
            return child
        if child == UNKNOT:
            if e.q >= 2:
                return Atom(torus_name(e.p, e.q))
            if e.q <= -2:
                return Mirror(Atom(torus_name(e.p, -e.q)))
            return UNKNOT
        return Cable(e.p, e.q, child)
    raise TypeError(f"not a knot expression: {e!r}")


def connected_sum(*parts: KnotExpr) -> KnotExpr:
    if not parts:
        return UNKNOT
    if len(parts) == 1:
        return normalize(parts[0])
    return normalize(Sum(tuple(parts)))


def connected_power(e: KnotExpr, k: int) -> KnotExpr:
    if k < 0:
        raise ValueError("connected power needs k >= 0")
    return connected_sum(*([e] * k))


def atoms(e: KnotExpr) -> Iterator[Atom]:
    if isinstance(e, Atom):
        yield e
    elif isinstance(e, Mirror):
        yield from atoms(e.child)
    elif isinstance(e, Sum):
        for child in e.children:
            yield from atoms(child)
    else:
        yield from atoms(e.child)


def render(e: KnotExpr) -> str:
    if isinstance(e, Atom):
        return e.name
    if isinstance(e, Mirror):
        return f"mirror({render(e.child)})"
    if isinstance(e, Sum):
        return " # ".join(render(c) for c in e.children)
    return f"cable({e.p},{e.q},{render(e.child)})"


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>-?\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[()#*,]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            raise KnotSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        kind = match.lastgroup or "punct"
        tokens.append(_Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, known: Callable[[str], bool]) -> None:
        self._tokens = _tokenize(text)
        self._index = 0
        self._known = known

    def _peek(self) -> _Token:
        return self._tokens[self._index]

    def _advance(self) -> _Token:
        tok = self._tokens[self._index]
        if tok.kind != "end":
            self._index += 1
        return tok

    def _at(self, text: str) -> bool:
        tok = self._peek()
        return tok.kind == "punct" and tok.text == text

    def _expect(self, text: str) -> _Token:
        tok = self._advance()
        if tok.kind != "punct" or tok.text != text:
            found = tok.text or "end of input"
            raise KnotSyntaxError(f"expected {text!r}, found {found!r}", tok.pos)
        return tok

    def _int(self) -> int:
        tok = self._advance()
        if tok.kind != "int":
            raise KnotSyntaxError(f"expected an integer, found {tok.text or 'end of input'!r}", tok.pos)
        return int(tok.text)

    def parse(self) -> KnotExpr:
        e = self._expr()
        tok = self._peek()
        if tok.kind != "end":
            raise KnotSyntaxError(f"unexpected {tok.text!r}", tok.pos)
        return e

    def _expr(self) -> KnotExpr:
        terms = [self._term()]
        while self._at("#"):
            self._advance()
            terms.append(self._term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def _term(self) -> KnotExpr:
        tok = self._peek()
        if tok.kind == "int":
            self._advance()
            count = int(tok.text)
            self._expect("*")
            inner = self._term()
            if count < 1:
                raise KnotSyntaxError(f"multiplier must be >= 1, got {count}", tok.pos)
            return inner if count == 1 else Sum((inner,) * count)
        node = self._primary()
        while self._at("*"):
            self._advance()
            node = Mirror(node)
        return node

    def _primary(self) -> KnotExpr:
        tok = self._advance()
        if tok.kind == "punct" and tok.text == "(":
            e = self._expr()
            self._expect(")")
            return e
        if tok.kind != "ident":
            raise KnotSyntaxError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)
        if tok.text == "mirror" and self._at("("):
            self._advance()
            e = self._expr()
            self._expect(")")
            return Mirror(e)
        if tok.text == "cable" and self._at("("):
            self._advance()
            p = self._int()
            self._expect(",")
            q = self._int()
            self._expect(",")
            e = self._expr()
            self._expect(")")
            if p < 1:
                raise KnotSyntaxError(f"cable requires p >= 1, got p={p}", tok.pos)
            if gcd(p, q) != 1:
                raise KnotSyntaxError(f"cable({p},{q},...) requires gcd(p, q) = 1", tok.pos)
            return Cable(p, q, e)
        name = self._atom_name(tok)
        if not self._known(name):
            raise UnknownAtomError(f"unknown atom {name!r} at position {tok.pos}")
        return Atom(name)

    def _atom_name(self, tok: _Token) -> str:
        if tok.text == "T" and self._at("("):
            self._advance()
            p = self._int()
            self._expect(",")
            q = self._int()
            self._expect(")")
            if p < 1 or q < 1:
                raise KnotSyntaxError("torus parameters must be positive; use mirror()", tok.pos)
            if gcd(p, q) != 1:
                raise KnotSyntaxError(f"T({p},{q}) requires gcd(p, q) = 1", tok.pos)
            return torus_name(p, q)
        if tok.text == "Wh":
            if not self._at("("):
                return WH_TREFOIL_NAME
            self._advance()
            inner = self._advance()
            if inner.kind != "ident":
                raise KnotSyntaxError("expected an atom inside Wh(...)", inner.pos)
            name = f"Wh({self._atom_name(inner)})"
            self._expect(")")
            return name
        return tok.text


def parse(text: str, db: "CertificateDB | None" = None) -> KnotExpr:
    """Parse and normalize a knot expression."""
    if db is None:
        from knotconc.certificates import default_database

        db = default_database()
    e = normalize(_Parser(text, db.knows).parse())
    logger.debug("Parsed %r -> %s", text, render(e))
    return e


# ---------------------------------------------------------------------------
# Alexander polynomial
# ---------------------------------------------------------------------------


def alexander(e: KnotExpr, db: "CertificateDB | None" = None) -> LaurentPoly:
    if db is None:
        from knotconc.certificates import default_database

        db = default_database()
    return _alexander(normalize(e), db)


def _alexander(e: KnotExpr, db: "CertificateDB") -> LaurentPoly:
    if isinstance(e, Atom):
        poly = db.lookup(e.name).alexander
        if poly is None:
            raise CertificateError(f"atom {e.name!r} has no Alexander polynomial")
        return poly
    if isinstance(e, Mirror):
        return _alexander(e.child, db)
    if isinstance(e, Sum):
        result = LaurentPoly.one()
        for child in e.children:
            result = result * _alexander(child, db)
        return result
    if e.q < 1:
        raise CableDomainError(f"cable({e.p},{e.q},...) needs q >= 1")
    return _alexander(e.child, db).substitute_power(e.p) * torus_alexander(e.p, e.q)


def topologically_slice_certified(e: KnotExpr, db: "CertificateDB | None" = None) -> bool:
    """True when certified topologically slice; False means "not certified".

    Either every atom is registered topologically slice and every cable is a
    (p, +-1) cable, or the Alexander polynomial is 1 (Freedman).
    """
    if db is None:
        from knotconc.certificates import default_database

        db = default_database()
    e = normalize(e)
    if _declared_slice(e, db):
        return True
    return _alexander(e, db).is_one()


def _declared_slice(e: KnotExpr, db: "CertificateDB") -> bool:
    if isinstance(e, Atom):
        return db.lookup(e.name).topologically_slice
    if isinstance(e, Mirror):
        return _declared_slice(e.child, db)
    if isinstance(e, Sum):
        return all(_declared_slice(c, db) for c in e.children)
    # cable(p, +-1, K) of a slice K is concordant to the unknot.
    return abs(e.q) == 1 and _declared_slice(e.child, db)


def genus_bound(e: KnotExpr, db: "CertificateDB | None" = None) -> int | None:
    """Seifert genus upper bound, or ``None`` when some atom has no genus."""
    if db is None:
        from knotconc.certificates import default_database

        db = default_database()
    return _genus_bound(normalize(e), db)


def _genus_bound(e: KnotExpr, db: "CertificateDB") -> int | None:
    if isinstance(e, Atom):
        return db.lookup(e.name).genus
    if isinstance(e, Mirror):
        return _genus_bound(e.child, db)
    if isinstance(e, Sum):
        total = 0
        for child in e.children:
            g = _genus_bound(child, db)
            if g is None:
                return None
            total += g
        return total
    g = _genus_bound(e.child, db)
    if g is None:
        return None
    return e.p * g + (e.p - 1) * (abs(e.q) - 1) // 2
