"""Quivers, paths and the cell/tail combinatorics relative to a vertex subset.

Paths are stored in traversal order: ``Path("x1", "x4", ("a1", "a2"))`` first
walks ``a1`` and then ``a2``.  The usual algebraic notation writes the same
path right to left as ``a2 a1``; :meth:`Path.algebraic` produces that form.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import ContractError

TRIVIAL_PREFIX = "e_"


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True, order=False)
class Path:
    """A path in a quiver: trivial (no arrows) or an arrow sequence in traversal order."""

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @classmethod
    def trivial(cls, vertex: str) -> "Path":
        return cls(vertex, vertex, ())

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        if not self.arrows:
            return TRIVIAL_PREFIX + self.source
        return ".".join(self.arrows)

    def __repr__(self) -> str:
        return f"Path({self})"

    def algebraic(self) -> str:
        """Right-to-left notation, last traversed arrow first."""
        if not self.arrows:
            return TRIVIAL_PREFIX + self.source
        return "·".join(reversed(self.arrows))


@dataclass(frozen=True)
class Quiver:
    """A finite directed multigraph with named vertices and arrows.

    Declaration order is kept and drives every iteration order in the package.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    _arrow_index: dict = field(init=False, repr=False, compare=False, hash=False)
    _vertex_index: dict = field(init=False, repr=False, compare=False, hash=False)
    _out: dict = field(init=False, repr=False, compare=False, hash=False)
    _in: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arrows", arrows)
        if len(set(vertices)) != len(vertices):
            raise ContractError("duplicate vertex id", module="quiver")
        vindex = {v: i for i, v in enumerate(vertices)}
        aindex: dict[str, int] = {}
        out: dict[str, list[Arrow]] = {v: [] for v in vertices}
        inc: dict[str, list[Arrow]] = {v: [] for v in vertices}
        for i, a in enumerate(arrows):
            if a.id in aindex:
                raise ContractError(f"duplicate arrow id {a.id!r}", module="quiver")
            if a.id.startswith(TRIVIAL_PREFIX) or "." in a.id or not a.id:
                raise ContractError(f"invalid arrow id {a.id!r}", module="quiver")
            for end in (a.source, a.target):
                if end not in vindex:
                    raise ContractError(f"arrow {a.id!r} references unknown vertex {end!r}", module="quiver")
            aindex[a.id] = i
            out[a.source].append(a)
            inc[a.target].append(a)
        object.__setattr__(self, "_vertex_index", vindex)
        object.__setattr__(self, "_arrow_index", aindex)
        object.__setattr__(self, "_out", {v: tuple(x) for v, x in out.items()})
        object.__setattr__(self, "_in", {v: tuple(x) for v, x in inc.items()})

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    # -- lookup -------------------------------------------------------------

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self.arrows[self._arrow_index[arrow_id]]
        except KeyError:
            raise ContractError(f"unknown arrow {arrow_id!r}", module="quiver") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_index

    def out_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._out[v]

    def in_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._in[v]

    def check_vertices(self, vertices: Iterable[str]) -> frozenset[str]:
        vs = frozenset(vertices)
        unknown = sorted(v for v in vs if v not in self._vertex_index)
        if unknown:
            raise ContractError(f"unknown vertices {unknown}", module="quiver")
        return vs

    def sort_vertices(self, vertices: Iterable[str]) -> list[str]:
        return sorted(vertices, key=self._vertex_index.__getitem__)

    # -- paths --------------------------------------------------------------

    def path_key(self, p: Path) -> tuple:
        """Canonical order: length, then arrow declaration indices, then source vertex."""
        return (len(p.arrows), tuple(self._arrow_index[a] for a in p.arrows), self._vertex_index[p.source])

    def sort_paths(self, paths: Iterable[Path]) -> list[Path]:
        return sorted(paths, key=self.path_key)

    def path(self, arrow_ids: Sequence[str] | str) -> Path:
        """Build a path from arrow ids in traversal order, or ``e_<v>`` for a trivial path."""
        if isinstance(arrow_ids, str):
            if arrow_ids.startswith(TRIVIAL_PREFIX) and arrow_ids[len(TRIVIAL_PREFIX):] in self._vertex_index:
                return Path.trivial(arrow_ids[len(TRIVIAL_PREFIX):])
            arrow_ids = arrow_ids.split(".")
        arrows = [self.arrow(a) for a in arrow_ids]
        if not arrows:
            raise ContractError("empty arrow sequence; use e_<vertex> for trivial paths", module="quiver")
        for prev, nxt in zip(arrows, arrows[1:]):
            if prev.target != nxt.source:
                raise ContractError(f"arrows {prev.id!r} and {nxt.id!r} do not compose", module="quiver")
        return Path(arrows[0].source, arrows[-1].target, tuple(a.id for a in arrows))

    def trace(self, p: Path) -> list[str]:
        """Vertices visited by ``p``, source first (length + 1 entries)."""
        return [p.source] + [self.arrow(a).target for a in p.arrows]

    def check_path(self, p: Path) -> Path:
        if p.is_trivial:
            if not self.has_vertex(p.source) or p.source != p.target:
                raise ContractError(f"invalid trivial path {p}", module="quiver")
            return p
        q = self.path(p.arrows)
        if q != p:
            raise ContractError(f"path endpoints do not match arrows: {p!r}", module="quiver")
        return p

    def paths_from(self, a: str, maxlen: int) -> tuple[Path, ...]:
        return _paths_from(self, a, maxlen)

    def paths_into(self, b: str, maxlen: int) -> tuple[Path, ...]:
        return _paths_into(self, b, maxlen)


def compose(p: Path, q: Path) -> Path | None:
    """Walk ``p`` and then ``q``; ``None`` when ``p`` does not end where ``q`` starts.

    This is the algebraic product ``q p``.
    """
    if p.target != q.source:
        return None
    if p.is_trivial:
        return q
    if q.is_trivial:
        return p
    return Path(p.source, q.target, p.arrows + q.arrows)


def subpath(q: Quiver, p: Path, start: int, stop: int) -> Path:
    """Arrows ``start:stop`` of ``p``; an empty range gives the trivial path at that position."""
    if start == stop:
        return Path.trivial(q.trace(p)[start])
    arrows = p.arrows[start:stop]
    return Path(q.arrow(arrows[0]).source, q.arrow(arrows[-1]).target, arrows)


@lru_cache(maxsize=4096)
def _paths_from(q: Quiver, a: str, maxlen: int) -> tuple[Path, ...]:
    if not q.has_vertex(a):
        raise ContractError(f"unknown vertex {a!r}", module="quiver")
    result = [Path.trivial(a)]
    frontier = [Path.trivial(a)]
    for _ in range(maxlen):
        nxt = []
        for p in frontier:
            for arr in q.out_arrows(p.target):
                nxt.append(Path(a, arr.target, p.arrows + (arr.id,)))
        if not nxt:
            break
        result.extend(nxt)
        frontier = nxt
    return tuple(q.sort_paths(result))


@lru_cache(maxsize=4096)
def _paths_into(q: Quiver, b: str, maxlen: int) -> tuple[Path, ...]:
    if not q.has_vertex(b):
        raise ContractError(f"unknown vertex {b!r}", module="quiver")
    result = [Path.trivial(b)]
    frontier = [Path.trivial(b)]
    for _ in range(maxlen):
        nxt = []
        for p in frontier:
            for arr in q.in_arrows(p.source):
                nxt.append(Path(arr.source, b, (arr.id,) + p.arrows))
        if not nxt:
            break
        result.extend(nxt)
        frontier = nxt
    return tuple(q.sort_paths(result))


def enumerate_paths(q: Quiver, a: str, b: str, maxlen: int) -> list[Path]:
    """All paths ``a -> b`` of length at most ``maxlen`` in canonical order."""
    if maxlen < 0:
        raise ContractError("length bound must be >= 0", module="quiver")
    q.check_vertices((a, b))
    return [p for p in q.paths_from(a, maxlen) if p.target == b]


def is_acyclic(q: Quiver) -> bool:
    indeg = {v: len(q.in_arrows(v)) for v in q.vertices}
    queue = deque(v for v in q.vertices if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for arr in q.out_arrows(v):
            indeg[arr.target] -= 1
            if indeg[arr.target] == 0:
                queue.append(arr.target)
    return seen == len(q.vertices)


def is_intervally_finite_upto(q: Quiver, maxlen: int) -> bool:
    """No oriented cycle of length <= maxlen.

    For a finite quiver every cycle yields infinitely many paths between its
    vertices, so the answer is exact once ``maxlen >= len(q.vertices)``.
    """
    if is_acyclic(q):
        return True
    for v in q.vertices:
        for p in q.paths_from(v, maxlen):
            if not p.is_trivial and p.target == v:
                return False
    return True


# -- cells and tails ---------------------------------------------------------


def is_cell(q: Quiver, p: Path, X: Iterable[str]) -> bool:
    if p.is_trivial:
        raise ContractError("is_cell needs a nontrivial path", module="quiver")
    X = frozenset(X)
    tr = q.trace(p)
    return tr[0] in X and tr[-1] in X and not any(v in X for v in tr[1:-1])


def is_tail(q: Quiver, p: Path, X: Iterable[str]) -> bool:
    if p.is_trivial:
        return False
    X = frozenset(X)
    tr = q.trace(p)
    return tr[0] in X and not any(v in X for v in tr[1:])


def _cuts(q: Quiver, p: Path, X: frozenset[str]) -> list[int]:
    tr = q.trace(p)
    return [i for i in range(1, len(tr) - 1) if tr[i] in X]


def cellular_decomposition(q: Quiver, p: Path, X: Iterable[str]) -> list[Path]:
    """The unique factorisation of ``p`` into cells, in traversal order."""
    X = frozenset(X)
    if p.is_trivial:
        raise ContractError("cellular decomposition needs a nontrivial path", module="quiver")
    if p.source not in X or p.target not in X:
        raise ContractError(f"endpoints of {p} are not both in X", module="quiver")
    bounds = [0] + _cuts(q, p, X) + [p.length]
    return [subpath(q, p, s, t) for s, t in zip(bounds, bounds[1:])]


def tail_decomposition(q: Quiver, p: Path, X: Iterable[str]) -> tuple[list[Path], Path]:
    """Factor ``p = t q_r ... q_1``; returns ``([q_1, ..., q_r], t)``."""
    X = frozenset(X)
    if p.is_trivial or p.source not in X:
        raise ContractError(f"tail decomposition needs a nontrivial path starting in X, got {p}", module="quiver")
    if p.target in X:
        raise ContractError(f"target of {p} lies in X; use cellular_decomposition", module="quiver")
    bounds = [0] + _cuts(q, p, X) + [p.length]
    pieces = [subpath(q, p, s, t) for s, t in zip(bounds, bounds[1:])]
    return pieces[:-1], pieces[-1]


def _walk_avoiding(q: Quiver, x: str, X: frozenset[str], maxlen: int) -> Iterator[tuple[Path, bool]]:
    """Paths from ``x`` whose interior avoids X; flag tells whether the path ends in X."""
    frontier = [Path.trivial(x)]
    for _ in range(maxlen):
        nxt = []
        for p in frontier:
            for arr in q.out_arrows(p.target):
                np_ = Path(x, arr.target, p.arrows + (arr.id,))
                if arr.target in X:
                    yield np_, True
                else:
                    yield np_, False
                    nxt.append(np_)
        frontier = nxt
        if not frontier:
            break


def enumerate_cells(q: Quiver, X: Iterable[str], x: str, y: str, maxlen: int) -> list[Path]:
    X = q.check_vertices(X)
    if x not in X or y not in X:
        raise ContractError("cell endpoints must lie in X", module="quiver")
    return q.sort_paths(p for p, ends_in_x in _walk_avoiding(q, x, X, maxlen) if ends_in_x and p.target == y)


def enumerate_all_cells(q: Quiver, X: Iterable[str], maxlen: int) -> list[Path]:
    X = q.check_vertices(X)
    out = []
    for x in q.sort_vertices(X):
        out.extend(p for p, ends_in_x in _walk_avoiding(q, x, X, maxlen) if ends_in_x)
    return q.sort_paths(out)


def enumerate_tails(q: Quiver, X: Iterable[str], x: str, maxlen: int) -> list[Path]:
    X = q.check_vertices(X)
    if x not in X:
        raise ContractError("tail source must lie in X", module="quiver")
    return q.sort_paths(p for p, ends_in_x in _walk_avoiding(q, x, X, maxlen) if not ends_in_x)
