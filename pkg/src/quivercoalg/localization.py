"""Localization of an admissible subcoalgebra at a vertex subset X.

``eCe`` keeps the components ``C_ab`` with ``a, b`` in X.  Its own quiver has
vertex set X and, from x to y, one arrow per basis vector of the span of
cells ``x -> y`` intersected with C.  Arrow labels are the RREF rows of that
intersection, so each arrow has a pivot cell.

Elements of eCe are rewritten in the localized quiver's paths by cutting every
path into cells and sending a cell to the arrow whose pivot it is (zero for a
non-pivot cell).  On eCe that map is injective and respects comultiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .coalgebra import GradedSubcoalgebra, is_subcoalgebra
from .errors import ContractError
from .linalg import PathVector, Subspace
from .quiver import (
    Arrow,
    Path,
    Quiver,
    cellular_decomposition,
    enumerate_cells,
    enumerate_paths,
    enumerate_tails,
    is_acyclic,
)


@dataclass
class LocalizedQuiver:
    """The quiver of eCe, each arrow labelled by a combination of cells of the original quiver."""

    quiver: Quiver
    labels: dict[str, PathVector]
    original: Quiver
    X: tuple[str, ...]
    maxlen: int
    pivot_arrow: dict[Path, str] = field(repr=False)

    def arrows_between(self, x: str, y: str) -> list[str]:
        return [a.id for a in self.quiver.arrows if a.source == x and a.target == y]

    def parallel_families(self, at_least: int = 3) -> list[tuple[str, str, int]]:
        """Vertex pairs x != y joined by at least ``at_least`` parallel arrows."""
        out = []
        for x in self.X:
            for y in self.X:
                n = len(self.arrows_between(x, y))
                if x != y and n >= at_least:
                    out.append((x, y, n))
        return out

    def reexpress_path(self, p: Path) -> Path | None:
        """Image of a path with both ends in X; None when some cell is not a pivot."""
        if p.is_trivial:
            return p
        word = []
        for cell in cellular_decomposition(self.original, p, self.X):
            arrow = self.pivot_arrow.get(cell)
            if arrow is None:
                return None
            word.append(arrow)
        return self.quiver.path(word)

    def reexpress(self, v: PathVector) -> PathVector:
        acc: dict[Path, Fraction] = {}
        for p, c in v.items():
            img = self.reexpress_path(p)
            if img is not None:
                acc[img] = acc.get(img, Fraction(0)) + c
        return PathVector(acc)


def _arrow_name(label: PathVector, x: str, y: str, k: int, taken: set[str]) -> str:
    if len(label) == 1:
        (p,) = label.support()
        base = "bar_" + "_".join(p.arrows)
    else:
        base = f"s_{x}_{y}_{k}"
    name, n = base, 1
    while name in taken:
        n += 1
        name = f"{base}_{n}"
    taken.add(name)
    return name


def localized_quiver(c: GradedSubcoalgebra, X: Iterable[str], maxlen: int | None = None) -> LocalizedQuiver:
    q = c.quiver
    Xs = q.sort_vertices(q.check_vertices(X))
    L = c.maxlen if maxlen is None else min(maxlen, c.maxlen)
    arrows: list[Arrow] = []
    labels: dict[str, PathVector] = {}
    pivot_arrow: dict[Path, str] = {}
    taken = set(Xs) | {"e_" + x for x in Xs}
    for x in Xs:
        for y in Xs:
            cells = enumerate_cells(q, Xs, x, y, L)
            if not cells:
                continue
            ambient = enumerate_paths(q, x, y, c.maxlen)
            cell_span = Subspace.span(ambient, (PathVector.from_path(p) for p in cells))
            prim = cell_span.intersect(c.component(x, y))
            for k, (row, piv) in enumerate(zip(prim.basis(), prim.pivots()), start=1):
                name = _arrow_name(row, x, y, k, taken)
                arrows.append(Arrow(name, x, y))
                labels[name] = row
                pivot_arrow[piv] = name
    qe = Quiver(tuple(Xs), tuple(arrows))
    return LocalizedQuiver(qe, labels, q, tuple(Xs), L, pivot_arrow)


@dataclass
class Localization:
    """eCe viewed two ways: as components of C over the original quiver, and re-expressed over its own quiver."""

    source: GradedSubcoalgebra
    X: tuple[str, ...]
    lquiver: LocalizedQuiver
    coalgebra: GradedSubcoalgebra

    @property
    def quiver(self) -> Quiver:
        return self.lquiver.quiver

    def in_original(self) -> GradedSubcoalgebra:
        """eCe as a (not necessarily closed) subspace of KQ over the original quiver."""
        comps = {(a, b): s for (a, b), s in self.source.items() if a in self.X and b in self.X}
        return GradedSubcoalgebra(self.source.quiver, self.source.maxlen, comps)

    def reexpress(self, v: PathVector) -> PathVector:
        return self.lquiver.reexpress(v)


def localize_coalgebra(c: GradedSubcoalgebra, X: Iterable[str]) -> Localization:
    lq = localized_quiver(c, X)
    Xset = set(lq.X)
    comps = {}
    for (a, b), s in c.items():
        if a not in Xset or b not in Xset:
            continue
        ambient = enumerate_paths(lq.quiver, a, b, c.maxlen)
        image = Subspace.span(ambient, (lq.reexpress(v) for v in s.basis()))
        if image.dim != s.dim:
            raise ContractError(
                f"re-expression of C_({a},{b}) lost rank ({s.dim} -> {image.dim}); input is not a subcoalgebra",
                module="localization",
            )
        comps[(a, b)] = image
    return Localization(c, lq.X, lq, GradedSubcoalgebra(lq.quiver, c.maxlen, comps, admissible=True))


def tail_space(c: GradedSubcoalgebra, X: Iterable[str], x: str, maxlen: int | None = None) -> Subspace:
    """Combinations of x-tails lying in C, inside the span of all x-tails up to the bound."""
    q = c.quiver
    Xs = q.check_vertices(X)
    if x not in Xs:
        raise ContractError(f"{x!r} is not in X", module="localization")
    L = c.maxlen if maxlen is None else min(maxlen, c.maxlen)
    tails = enumerate_tails(q, Xs, x, L)
    space = Subspace(tails)
    targets = q.sort_vertices({t.target for t in tails})
    for b in targets:
        ambient = enumerate_paths(q, x, b, c.maxlen)
        span = Subspace.span(ambient, (PathVector.from_path(t) for t in tails if t.target == b))
        for v in span.intersect(c.component(x, b)).basis():
            space.add(v)
    return space


@dataclass
class IdempotentClassification:
    X: tuple[str, ...]
    maxlen: int
    left_semicentral: bool
    right_semicentral: bool
    split: bool
    colocalizing: bool | None
    entering_arrows: list[str]
    leaving_arrows: list[str]
    split_witness: Path | None
    ece_is_subcoalgebra: bool
    tail_dimensions: dict[str, list[int]]
    growth_warning: list[str]
    acyclic_shortcut: bool

    def to_dict(self) -> dict:
        return {
            "X": list(self.X),
            "maxlen": self.maxlen,
            "left_semicentral": self.left_semicentral,
            "right_semicentral": self.right_semicentral,
            "split": self.split,
            "colocalizing": self.colocalizing,
            "witness": {
                "arrows_entering_X": self.entering_arrows,
                "arrows_leaving_X": self.leaving_arrows,
                "support_path_leaving_X": None if self.split_witness is None else str(self.split_witness),
            },
            "eCe_is_subcoalgebra_of_C": self.ece_is_subcoalgebra,
            "tail_dimensions": {x: dims for x, dims in self.tail_dimensions.items()},
            "growth_warning": self.growth_warning,
            "acyclic_shortcut": self.acyclic_shortcut,
        }


def classify_idempotent(c: GradedSubcoalgebra, X: Iterable[str], maxlen: int | None = None) -> IdempotentClassification:
    q = c.quiver
    Xs = q.sort_vertices(q.check_vertices(X))
    Xset = set(Xs)
    L = c.maxlen if maxlen is None else min(maxlen, c.maxlen)
    cc = c if L == c.maxlen else c.truncate(L)

    entering = [a.id for a in q.arrows if a.source not in Xset and a.target in Xset]
    leaving = [a.id for a in q.arrows if a.source in Xset and a.target not in Xset]

    witness = None
    for (a, b), s in cc.items():
        if a in Xset and b in Xset:
            for p in q.sort_paths(s.psupp()):
                if not set(q.trace(p)) <= Xset:
                    witness = p
                    break
        if witness is not None:
            break

    ece = GradedSubcoalgebra(q, L, {k: s for k, s in cc.items() if k[0] in Xset and k[1] in Xset})

    dims: dict[str, list[int]] = {}
    warnings = []
    for x in Xs:
        dims[x] = [tail_space(cc, Xs, x, bound).dim for bound in range(1, L + 1)]
        if len(dims[x]) >= 2 and dims[x][-1] > dims[x][-2]:
            warnings.append(x)
    shortcut = is_acyclic(q)
    colocalizing = True if (shortcut or not warnings) else None

    return IdempotentClassification(
        X=tuple(Xs),
        maxlen=L,
        left_semicentral=not entering,
        right_semicentral=not leaving,
        split=witness is None,
        colocalizing=colocalizing,
        entering_arrows=entering,
        leaving_arrows=leaving,
        split_witness=witness,
        ece_is_subcoalgebra=is_subcoalgebra(ece),
        tail_dimensions=dims,
        growth_warning=warnings,
        acyclic_shortcut=shortcut,
    )
