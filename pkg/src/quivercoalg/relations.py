"""Relation ideals, the duality C(Q, Ω) <-> H^⊥, and bounded criterion witnesses.

An ideal is only ever seen through its projection onto paths of length <= L:
the Kronecker pairing of a truncated element never looks further, so
``C(Q, Ω)`` up to L is exactly the annihilator of that projection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .coalgebra import GradedSubcoalgebra
from .errors import ContractError
from .linalg import PathVector, Subspace
from .quiver import Path, Quiver, compose, enumerate_paths


def _ambients(q: Quiver, maxlen: int) -> dict[tuple[str, str], list[Path]]:
    out: dict[tuple[str, str], list[Path]] = {}
    for a in q.vertices:
        for p in q.paths_from(a, maxlen):
            out.setdefault((a, p.target), []).append(p)
    return out


def _multiply(u: Path, v: PathVector, w: Path, maxlen: int) -> PathVector:
    """Walk u, then v, then w (algebraically ``w·v·u``), dropping terms longer than maxlen."""
    acc: dict[Path, Fraction] = {}
    for p, c in v.items():
        r = compose(u, p)
        r = compose(r, w) if r is not None else None
        if r is not None and r.length <= maxlen:
            acc[r] = acc.get(r, Fraction(0)) + c
    return PathVector(acc)


@dataclass
class RelationIdeal:
    quiver: Quiver
    generators: list[PathVector]
    maxlen: int
    spans: dict[tuple[str, str], Subspace]
    violations: list[str] = field(default_factory=list)

    def component(self, a: str, b: str) -> Subspace:
        s = self.spans.get((a, b))
        return s if s is not None else Subspace(enumerate_paths(self.quiver, a, b, self.maxlen))

    def keys(self) -> list[tuple[str, str]]:
        idx = {v: i for i, v in enumerate(self.quiver.vertices)}
        return sorted((k for k, s in self.spans.items() if s.dim), key=lambda k: (idx[k[0]], idx[k[1]]))

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.spans.values())

    def basis(self) -> list[PathVector]:
        return [v for k in self.keys() for v in self.spans[k].basis()]

    def same_span(self, other: "RelationIdeal") -> bool:
        if self.quiver != other.quiver or self.maxlen != other.maxlen:
            return False
        return self.keys() == other.keys() and all(self.spans[k] == other.spans[k] for k in self.keys())

    def __eq__(self, other):
        if not isinstance(other, RelationIdeal):
            return NotImplemented
        return self.same_span(other)


def _check_generator(q: Quiver, g: PathVector, maxlen: int):
    for p in g:
        q.check_path(p)
        if p.length < 2:
            raise ContractError(f"relation {g} has a term of length {p.length}; relations live in KQ_>=2",
                                module="relations")
        if p.length > maxlen:
            raise ContractError(f"relation {g} exceeds the length bound {maxlen}", module="relations")


def truncated_ideal_span(q: Quiver, generators: Iterable[PathVector], maxlen: int) -> RelationIdeal:
    """Projection to length <= maxlen of the two-sided ideal generated by ``generators``."""
    generators = list(generators)
    ambients = _ambients(q, maxlen)
    spans: dict[tuple[str, str], Subspace] = {}
    for g in generators:
        _check_generator(q, g, maxlen)
        for (a, b), part in g.homogeneous_parts().items():
            room = maxlen - min(p.length for p in part)
            for u in q.paths_into(a, room):
                for w in q.paths_from(b, room - u.length):
                    elem = _multiply(u, part, w, maxlen)
                    if not elem:
                        continue
                    key = (u.source, w.target)
                    s = spans.get(key)
                    if s is None:
                        s = spans[key] = Subspace(ambients[key])
                    s.add(elem)
    return RelationIdeal(q, generators, maxlen, spans)


def two_sided_violations(ideal: RelationIdeal) -> list[str]:
    """Ways in which the stored spans fail to be a truncated relation ideal."""
    q, L = ideal.quiver, ideal.maxlen
    out = []
    for (a, b), s in ideal.spans.items():
        for v in s.basis():
            short = [p for p in v if p.length < 2]
            if short:
                out.append(f"{v} has terms of length < 2")
                continue
            for arr in q.in_arrows(a):
                u = Path(arr.source, arr.target, (arr.id,))
                prod = _multiply(u, v, Path.trivial(b), L)
                if prod and not ideal.component(arr.source, b).member(prod):
                    out.append(f"{arr.id} * ({v}) leaves the span")
            for arr in q.out_arrows(b):
                w = Path(arr.source, arr.target, (arr.id,))
                prod = _multiply(Path.trivial(a), v, w, L)
                if prod and not ideal.component(a, arr.target).member(prod):
                    out.append(f"({v}) * {arr.id} leaves the span")
    return out


def coalgebra_of_relations(q: Quiver, ideal: RelationIdeal | Iterable[PathVector], maxlen: int | None = None) -> GradedSubcoalgebra:
    """C(Q, Ω) up to the bound: componentwise annihilator of the truncated ideal."""
    if not isinstance(ideal, RelationIdeal):
        if maxlen is None:
            raise ContractError("a length bound is required", module="relations")
        ideal = truncated_ideal_span(q, ideal, maxlen)
    L = ideal.maxlen if maxlen is None else maxlen
    if L != ideal.maxlen:
        raise ContractError("ideal was truncated at a different bound", module="relations")
    comps = {}
    for key, ambient in _ambients(q, L).items():
        comps[key] = ideal.component(*key).orthogonal()
    return GradedSubcoalgebra(q, L, comps, admissible=True)


def relations_of_coalgebra(h: GradedSubcoalgebra, maxlen: int | None = None, strict: bool = False) -> RelationIdeal:
    """H^⊥ up to the bound, returned with its RREF rows as generators.

    ``violations`` lists every reason the complement fails to be a relation
    ideal (non-admissible input, or a pathological truncation); ``strict``
    turns a non-empty list into an error.
    """
    L = h.maxlen if maxlen is None else maxlen
    if L > h.maxlen:
        raise ContractError("cannot dualize above the coalgebra's bound", module="relations")
    if L < h.maxlen:
        h = h.truncate(L)
    spans = {}
    gens = []
    for key in _ambients(h.quiver, L):
        perp = h.component(*key).orthogonal()
        if perp.dim:
            spans[key] = perp
            gens.extend(perp.basis())
    ideal = RelationIdeal(h.quiver, gens, L, spans)
    ideal.violations = two_sided_violations(ideal)
    if strict and ideal.violations:
        raise ContractError("complement is not a relation ideal: " + "; ".join(ideal.violations[:3]),
                            module="relations")
    return ideal


@dataclass
class CriterionWitness:
    source: str
    target: str
    maxlen: int
    rows: list[tuple[PathVector, Path]]
    component_dim: int

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_dict(self, quiver: Quiver | None = None) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "maxlen": self.maxlen,
            "component_dim": self.component_dim,
            "witness_size": self.size,
            "rows": [{"sigma": v.format(quiver), "pivot": str(p)} for v, p in self.rows],
            "note": f"bounded evidence only: witness family of size {self.size} at bound {self.maxlen}",
        }


def criterion_witness(c: GradedSubcoalgebra, x: str, y: str, maxlen: int | None = None) -> CriterionWitness:
    """RREF rows of C_xy whose whole support consists of paths not individually in C.

    Rows are pivot + strictly later paths in canonical order, which is the
    triangular shape the non-path-coalgebra criterion asks for.
    """
    c.quiver.check_vertices((x, y))
    L = c.maxlen if maxlen is None else maxlen
    if L > c.maxlen:
        raise ContractError("cannot search above the coalgebra's bound", module="relations")
    cc = c if L == c.maxlen else c.truncate(L)
    comp = cc.component(x, y)
    outside = {p for p in comp.ambient if not comp.member(PathVector.from_path(p))}
    rows = [(v, piv) for v, piv in zip(comp.basis(), comp.pivots()) if v.support() <= outside]
    return CriterionWitness(x, y, L, rows, comp.dim)
