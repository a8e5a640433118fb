"""The path coalgebra KQ and its subcoalgebras, stored by endpoint components.

Comultiplication splits a path into its two-part factorisations.  With paths
in traversal order a split at position ``k`` gives ``later ⊗ earlier``: the
left leg is the part walked last, matching the algebraic notation where
``Δ(a2 a1) = e ⊗ a2 a1 + a2 ⊗ a1 + a2 a1 ⊗ e``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import ContractError
from .linalg import PathVector, Subspace
from .quiver import Path, Quiver, enumerate_paths, subpath


class TensorExpansion:
    """An element of KQ ⊗ KQ as a map (left path, right path) -> coefficient."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[Path, Path], object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[Path, Path], Fraction] = {}
        for k, c in items:
            acc[k] = acc.get(k, Fraction(0)) + Fraction(c)
        self._terms = {k: c for k, c in acc.items() if c}

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return isinstance(other, TensorExpansion) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def coefficient(self, left: Path, right: Path) -> Fraction:
        return self._terms.get((left, right), Fraction(0))

    def sorted_terms(self, quiver: Quiver | None = None):
        key = quiver.path_key if quiver else (lambda p: (p.length, p.arrows, p.source))
        return sorted(self._terms.items(), key=lambda kc: (kc[0][0].length, key(kc[0][0]), key(kc[0][1])))

    def format(self, quiver: Quiver | None = None, algebraic: bool = False) -> str:
        parts = []
        for (l, r), c in self.sorted_terms(quiver):
            ls, rs = (l.algebraic(), r.algebraic()) if algebraic else (str(l), str(r))
            body = f"{ls} ⊗ {rs}" if abs(c) == 1 else f"{abs(c)}*{ls} ⊗ {rs}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts) or "0"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"TensorExpansion({self.format()!r})"


def splits(q: Quiver, p: Path) -> Iterator[tuple[Path, Path]]:
    """Yield ``(later, earlier)`` for every factorisation of ``p``, earlier part growing."""
    for k in range(p.length + 1):
        yield subpath(q, p, k, p.length), subpath(q, p, 0, k)


def delta(q: Quiver, p: Path) -> TensorExpansion:
    return TensorExpansion({pair: 1 for pair in splits(q, p)})


def delta_elem(q: Quiver, v: PathVector) -> TensorExpansion:
    acc: dict[tuple[Path, Path], Fraction] = {}
    for p, c in v.items():
        for pair in splits(q, p):
            acc[pair] = acc.get(pair, Fraction(0)) + c
    return TensorExpansion(acc)


def counit(v: PathVector) -> Fraction:
    return sum((c for p, c in v.items() if p.is_trivial), Fraction(0))


def contractions(q: Quiver, v: PathVector) -> list[PathVector]:
    """All partial evaluations of Δ(v) by a path functional on either leg.

    A subspace V is a subcoalgebra exactly when it contains these for every v in V.
    """
    left: dict[Path, dict[Path, Fraction]] = {}
    right: dict[Path, dict[Path, Fraction]] = {}
    for p, c in v.items():
        for later, earlier in splits(q, p):
            d = left.setdefault(later, {})
            d[earlier] = d.get(earlier, Fraction(0)) + c
            d = right.setdefault(earlier, {})
            d[later] = d.get(later, Fraction(0)) + c
    out = []
    for table in (left, right):
        for key in q.sort_paths(table):
            w = PathVector(table[key])
            if w:
                out.append(w)
    return out


def psupp(v: PathVector) -> frozenset[Path]:
    return v.support()


def psupp_set(vectors: Iterable[PathVector]) -> frozenset[Path]:
    out: set[Path] = set()
    for v in vectors:
        out |= v.support()
    return frozenset(out)


class GradedSubcoalgebra:
    """A subspace of KQ truncated at ``maxlen``, stored as components ``C_ab``.

    Each stored component is a :class:`Subspace` of ``enumerate_paths(Q, a, b, maxlen)``.
    Components not stored are zero.
    """

    def __init__(self, quiver: Quiver, maxlen: int, components: Mapping[tuple[str, str], Subspace] | None = None,
                 admissible: bool = False):
        if maxlen < 0:
            raise ContractError("length bound must be >= 0", module="pathcoalg")
        self.quiver = quiver
        self.maxlen = maxlen
        self.admissible = admissible
        self._components: dict[tuple[str, str], Subspace] = {}
        for key, s in (components or {}).items():
            if s.ambient != tuple(self.ambient(*key)):
                s = s.extend(self.ambient(*key)) if set(s.ambient) <= set(self.ambient(*key)) else s
                if s.ambient != tuple(self.ambient(*key)):
                    raise ContractError(f"component {key} has the wrong ambient", module="pathcoalg")
            if s.dim:
                self._components[key] = s

    def ambient(self, a: str, b: str) -> list[Path]:
        return enumerate_paths(self.quiver, a, b, self.maxlen)

    def component(self, a: str, b: str) -> Subspace:
        self.quiver.check_vertices((a, b))
        s = self._components.get((a, b))
        return s if s is not None else Subspace(self.ambient(a, b))

    def dim_component(self, a: str, b: str) -> int:
        s = self._components.get((a, b))
        return s.dim if s is not None else 0

    def keys(self) -> list[tuple[str, str]]:
        idx = {v: i for i, v in enumerate(self.quiver.vertices)}
        return sorted(self._components, key=lambda k: (idx[k[0]], idx[k[1]]))

    def items(self) -> list[tuple[tuple[str, str], Subspace]]:
        return [(k, self._components[k]) for k in self.keys()]

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self._components.values())

    def basis(self) -> list[PathVector]:
        return [v for _, s in self.items() for v in s.basis()]

    def member(self, v: PathVector) -> bool:
        for (a, b), part in v.homogeneous_parts().items():
            if max(p.length for p in part) > self.maxlen:
                return False
            if not self.component(a, b).member(part):
                return False
        return True

    __contains__ = member

    def contains_path(self, p: Path) -> bool:
        return self.member(PathVector.from_path(p))

    def psupp(self) -> frozenset[Path]:
        out: set[Path] = set()
        for s in self._components.values():
            out |= s.psupp()
        return frozenset(out)

    def truncate(self, maxlen: int) -> "GradedSubcoalgebra":
        """Intersection with the paths of length <= maxlen (itself a subcoalgebra when self is one)."""
        if maxlen > self.maxlen:
            raise ContractError("cannot truncate above the stored bound", module="pathcoalg")
        comps = {k: s.restrict(enumerate_paths(self.quiver, k[0], k[1], maxlen)) for k, s in self.items()}
        return GradedSubcoalgebra(self.quiver, maxlen, comps, admissible=self.admissible)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedSubcoalgebra):
            return NotImplemented
        return (self.quiver == other.quiver and self.maxlen == other.maxlen
                and self.keys() == other.keys()
                and all(self._components[k] == other._components[k] for k in self.keys()))

    def __repr__(self) -> str:
        return f"GradedSubcoalgebra(dim={self.dim}, maxlen={self.maxlen}, components={len(self._components)})"


def full_path_coalgebra(q: Quiver, maxlen: int) -> GradedSubcoalgebra:
    """KQ truncated at ``maxlen``."""
    comps = {}
    for a in q.vertices:
        by_target: dict[str, list[Path]] = {}
        for p in q.paths_from(a, maxlen):
            by_target.setdefault(p.target, []).append(p)
        for b, paths in by_target.items():
            comps[(a, b)] = Subspace.full(paths)
    return GradedSubcoalgebra(q, maxlen, comps, admissible=True)


def subcoalgebra_closure(q: Quiver, generators: Iterable[PathVector], maxlen: int,
                         admissible: bool = True) -> GradedSubcoalgebra:
    """Smallest subcoalgebra of KQ containing the generators (and Q_0, Q_1 when admissible).

    Non-homogeneous generators are split by endpoint pair first.  Since Δ never
    lengthens a path, the result is exact as soon as the generators fit in ``maxlen``.
    """
    if admissible and maxlen < 1:
        raise ContractError("an admissible subcoalgebra needs maxlen >= 1", module="pathcoalg")
    comps: dict[tuple[str, str], Subspace] = {}
    queue: deque[PathVector] = deque()

    def add(v: PathVector):
        key = v.endpoints()
        s = comps.get(key)
        if s is None:
            s = comps[key] = Subspace(enumerate_paths(q, key[0], key[1], maxlen))
        if s.add(v):
            queue.append(v)

    for g in generators:
        for part in g.homogeneous_parts().values():
            for p in part:
                q.check_path(p)
            if max(p.length for p in part) > maxlen:
                raise ContractError(f"generator {part} exceeds the length bound {maxlen}", module="pathcoalg")
            add(part)
    if admissible:
        for v in q.vertices:
            add(PathVector.from_path(Path.trivial(v)))
        for arr in q.arrows:
            add(PathVector.from_path(Path(arr.source, arr.target, (arr.id,))))
    while queue:
        v = queue.popleft()
        for w in contractions(q, v):
            add(w)
    return GradedSubcoalgebra(q, maxlen, comps, admissible=admissible)


def is_subcoalgebra(c: GradedSubcoalgebra) -> bool:
    for _, s in c.items():
        for v in s.basis():
            if not all(c.member(w) for w in contractions(c.quiver, v)):
                return False
    return True


def is_admissible(c: GradedSubcoalgebra) -> bool:
    q = c.quiver
    for v in q.vertices:
        if not c.contains_path(Path.trivial(v)):
            return False
    for arr in q.arrows:
        if c.maxlen < 1 or not c.contains_path(Path(arr.source, arr.target, (arr.id,))):
            return False
    return is_subcoalgebra(c)


@dataclass(frozen=True)
class ComponentFlag:
    source: str
    target: str
    dim: int

    @property
    def message(self) -> str:
        return f"dim C_({self.source},{self.target}) = {self.dim} exceeds 2: not tame-compatible for an acyclic quiver"


def tameness_diagnostic(c: GradedSubcoalgebra) -> list[ComponentFlag]:
    """Components ``C_xy`` (x != y) of dimension above 2."""
    return [ComponentFlag(a, b, s.dim) for (a, b), s in c.items() if a != b and s.dim > 2]
