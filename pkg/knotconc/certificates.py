"""Per-atom invariant certificates and nu+-equivalence rewrite axioms."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from knotconc.errors import CertificateError, UnknownAtomError
from knotconc.knotexpr import (
    UNKNOT,
    UNKNOT_NAME,
    WH_TREFOIL_NAME,
    Atom,
    Cable,
    KnotExpr,
    Mirror,
    Sum,
    atoms,
    normalize,
    torus_name,
    torus_parameters,
)
from knotconc.laurent import LaurentPoly, torus_alexander

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AtomCertificate:
    name: str
    tau: Optional[int] = None
    genus: Optional[int] = None
    tau_equals_genus: bool = False
    lspace: bool = False
    alexander: Optional[LaurentPoly] = None
    v0: Optional[int] = None
    v0_mirror: Optional[int] = None
    topologically_slice: bool = False
    provenance: str = "builtin"

    def validate(self) -> "AtomCertificate":
        """Raise ``CertificateError`` unless the fields are mutually consistent."""
        where = f"certificate {self.name!r}"
        if self.genus is not None and self.genus < 0:
            raise CertificateError(f"{where}: genus must be >= 0")
        for label, value in (("v0", self.v0), ("v0_mirror", self.v0_mirror)):
            if value is not None and value < 0:
                raise CertificateError(f"{where}: {label} must be >= 0")
        if self.alexander is not None:
            if not self.alexander.is_symmetric() or self.alexander.value_at_one() != 1:
                raise CertificateError(f"{where}: Alexander polynomial must be symmetric with value 1 at t=1")
        if self.tau_equals_genus and (self.tau is None or self.tau != self.genus):
            raise CertificateError(f"{where}: tau_equals_genus needs tau == genus")
        if self.lspace:
            if self.alexander is None:
                raise CertificateError(f"{where}: L-space atoms need an Alexander polynomial")
            top = self.alexander.top_degree
            if self.tau != top or self.genus != top:
                raise CertificateError(
                    f"{where}: L-space atoms need tau == genus == top Alexander degree ({top})"
                )
        if self.tau is not None and self.genus is not None and abs(self.tau) > self.genus:
            raise CertificateError(f"{where}: |tau| exceeds genus")
        if self.v0 is not None and self.genus is not None and self.v0 > self.genus:
            raise CertificateError(f"{where}: v0 exceeds genus")
        if self.v0_mirror is not None and self.genus is not None and self.v0_mirror > self.genus:
            raise CertificateError(f"{where}: v0_mirror exceeds genus")
        return self


@lru_cache(maxsize=None)
def builtin(name: str) -> AtomCertificate:
    if name == UNKNOT_NAME:
        return AtomCertificate(
            name=name,
            tau=0,
            genus=0,
            tau_equals_genus=True,
            lspace=True,
            alexander=LaurentPoly.one(),
            v0=0,
            v0_mirror=0,
            topologically_slice=True,
        )
    if name == WH_TREFOIL_NAME:
        return AtomCertificate(
            name=name,
            tau=1,
            genus=1,
            tau_equals_genus=True,
            alexander=LaurentPoly.one(),
            v0=1,
            topologically_slice=True,
            provenance="positive Whitehead double of the right-handed trefoil",
        )
    params = torus_parameters(name)
    if params is not None:
        p, q = params
        g = (p - 1) * (q - 1) // 2
        return AtomCertificate(
            name=name,
            tau=g,
            genus=g,
            tau_equals_genus=True,
            lspace=True,
            alexander=torus_alexander(p, q),
            provenance="torus knot",
        )
    raise UnknownAtomError(f"unknown atom {name!r}")


def is_builtin(name: str) -> bool:
    try:
        builtin(name)
    except UnknownAtomError:
        return False
    return True


@dataclass(frozen=True)
class NuEquivalenceAxiom:
    """``k`` copies of ``atom`` are nu+-equivalent to ``replacement(k)``.

    Only V_0 and nu+ may be read off the replacement.
    """

    atom: str
    replacement: Callable[[int], KnotExpr]
    source: str = ""


def _wh_trefoil_replacement(k: int) -> KnotExpr:
    return Atom(torus_name(2, 2 * k + 1))


WH_TREFOIL_AXIOM = NuEquivalenceAxiom(
    atom=WH_TREFOIL_NAME,
    replacement=_wh_trefoil_replacement,
    source="k-fold sum of Wh(T(2,3)) is nu+-equivalent to T(2,2k+1)",
)


class CertificateDB:
    """Immutable view over built-in and registered certificates."""

    def __init__(
        self,
        registered: Iterable[AtomCertificate] = (),
        axioms: Iterable[NuEquivalenceAxiom] = (WH_TREFOIL_AXIOM,),
    ) -> None:
        entries: dict[str, AtomCertificate] = {}
        for cert in registered:
            if is_builtin(cert.name):
                raise CertificateError(f"atom {cert.name!r} is built in and cannot be redefined")
            if cert.name in entries:
                raise CertificateError(f"atom {cert.name!r} registered twice")
            entries[cert.name] = cert.validate()
        self._registered = entries
        self._axioms = tuple(axioms)

    @property
    def axioms(self) -> tuple[NuEquivalenceAxiom, ...]:
        return self._axioms

    @property
    def registered(self) -> tuple[AtomCertificate, ...]:
        return tuple(self._registered.values())

    def lookup(self, name: str) -> AtomCertificate:
        cert = self._registered.get(name)
        if cert is not None:
            return cert
        return builtin(name)

    def knows(self, name: str) -> bool:
        return name in self._registered or is_builtin(name)

    def with_atoms(self, certs: Iterable[AtomCertificate]) -> "CertificateDB":
        return CertificateDB([*self._registered.values(), *certs], self._axioms)

    def weakened(self, name: str, *fields: str) -> "CertificateDB":
        """Copy with the named certificate fields of a registered atom cleared."""
        cert = self._registered.get(name)
        if cert is None:
            raise CertificateError(f"only registered atoms can be weakened, got {name!r}")
        cleared = {f: (False if isinstance(getattr(cert, f), bool) else None) for f in fields}
        # Dependent flags fall with the data they summarize.
        if "tau" in fields or "genus" in fields:
            cleared["tau_equals_genus"] = False
        if {"tau", "genus", "alexander"} & set(fields):
            cleared["lspace"] = False
        others = [c for n, c in self._registered.items() if n != name]
        return CertificateDB([*others, replace(cert, **cleared)], self._axioms)

    def gaps(self, e: KnotExpr) -> List[str]:
        """Missing certificate fields for the atoms of ``e``."""
        found: List[str] = []
        seen: set[str] = set()
        for atom in atoms(e):
            if atom.name in seen:
                continue
            seen.add(atom.name)
            cert = self.lookup(atom.name)
            missing = [
                label
                for label, value in (
                    ("tau", cert.tau),
                    ("genus", cert.genus),
                    ("alexander", cert.alexander),
                )
                if value is None
            ]
            if not cert.lspace and cert.v0 is None:
                missing.append("v0")
            found.extend(f"{atom.name}: {label} missing" for label in missing)
        for gap in found:
            logger.warning("Certificate gap: %s", gap)
        return found


def _join(summands: List[KnotExpr]) -> KnotExpr:
    if not summands:
        return UNKNOT
    if len(summands) == 1:
        return summands[0]
    return Sum(tuple(summands))


def _replace_groups(summands: List[KnotExpr], axioms: tuple[NuEquivalenceAxiom, ...]) -> List[KnotExpr]:
    for axiom in axioms:
        target = Atom(axiom.atom)
        count = sum(1 for s in summands if s == target)
        if count == 0:
            continue
        first = summands.index(target)
        rest = [s for s in summands if s != target]
        rest.insert(first, axiom.replacement(count))
        summands = rest
        logger.debug("nu+-equivalence: %d x %s -> %s", count, axiom.atom, summands[first])
    return summands


def _reduce_inside(e: KnotExpr, axioms: tuple[NuEquivalenceAxiom, ...]) -> KnotExpr:
    # Groups are only replaced at Sum nodes; a lone atom under a mirror or cable stays.
    if isinstance(e, Mirror):
        return Mirror(_reduce_inside(e.child, axioms))
    if isinstance(e, Cable):
        return Cable(e.p, e.q, _reduce_inside(e.child, axioms))
    if isinstance(e, Sum):
        return _join(_replace_groups([_reduce_inside(c, axioms) for c in e.children], axioms))
    return e


def nu_equiv_reduce(e: KnotExpr, db: CertificateDB | None = None) -> KnotExpr:
    """Replace groups of axiom atoms inside every Sum, the root included.

    The rewrite runs bottom-up through mirrors and cable companions. The
    result is valid only for V_0 and nu+ queries.
    """
    db = db or default_database()
    e = normalize(e)
    summands = list(e.children) if isinstance(e, Sum) else [e]
    reduced = _replace_groups([_reduce_inside(s, db.axioms) for s in summands], db.axioms)
    return normalize(_join(reduced))


# ---------------------------------------------------------------------------
# Registry file
# ---------------------------------------------------------------------------


class AtomRecord(BaseModel):
    name: str = Field(..., min_length=1, description="Atom identifier used in expressions")
    tau: Optional[int] = None
    genus: Optional[int] = Field(None, ge=0)
    tau_equals_genus: bool = False
    lspace: bool = False
    alexander: Optional[List[int]] = Field(
        None, description="Symmetric coefficients from lowest to highest degree"
    )
    v0: Optional[int] = Field(None, ge=0)
    v0_mirror: Optional[int] = Field(None, ge=0)
    topologically_slice: bool = False
    provenance: str = "registry"

    def to_certificate(self) -> AtomCertificate:
        try:
            poly = None if self.alexander is None else LaurentPoly.from_symmetric_list(self.alexander)
        except ValueError as exc:
            raise CertificateError(f"atom {self.name!r}: {exc}") from exc
        if self.topologically_slice and poly is not None and not poly.is_one():
            logger.info("Atom %s declared topologically slice with nontrivial Alexander polynomial", self.name)
        return AtomCertificate(
            name=self.name,
            tau=self.tau,
            genus=self.genus,
            tau_equals_genus=self.tau_equals_genus,
            lspace=self.lspace,
            alexander=poly,
            v0=self.v0,
            v0_mirror=self.v0_mirror,
            topologically_slice=self.topologically_slice,
            provenance=self.provenance,
        ).validate()


class AtomRegistry(BaseModel):
    atoms: List[AtomRecord] = Field(default_factory=list)


def parse_registry(data: Union[list, dict]) -> List[AtomCertificate]:
    """Validate registry data: either a list of records or ``{"atoms": [...]}``."""
    payload = {"atoms": data} if isinstance(data, list) else data
    try:
        registry = AtomRegistry.model_validate(payload)
    except ValidationError as exc:
        raise CertificateError(f"invalid atom registry: {exc}") from exc
    return [record.to_certificate() for record in registry.atoms]


def load_registry(path: Path) -> List[AtomCertificate]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CertificateError(f"cannot read atom registry {path}: {exc}") from exc
    certs = parse_registry(data)
    logger.info("Loaded %d atoms from %s", len(certs), path)
    return certs


@lru_cache(maxsize=1)
def default_database() -> CertificateDB:
    return CertificateDB()


def build_database(atoms_path: Path | None = None) -> CertificateDB:
    """Built-in database extended by the registry at ``atoms_path`` (if any)."""
    if atoms_path is None:
        return default_database()
    return default_database().with_atoms(load_registry(atoms_path))


__all__ = [
    "AtomCertificate",
    "AtomRecord",
    "AtomRegistry",
    "CertificateDB",
    "NuEquivalenceAxiom",
    "WH_TREFOIL_AXIOM",
    "build_database",
    "builtin",
    "default_database",
    "is_builtin",
    "load_registry",
    "nu_equiv_reduce",
    "parse_registry",
]
