"""Exact sparse linear algebra over the rationals on a path basis.

Two layers live here.  :class:`Echelon` is a sparse reduced row-echelon
accumulator over integer column indices; everything else (subspaces of
path spans, comodule kernels) is built on it.  :class:`PathVector` and
:class:`Subspace` are the path-indexed values the rest of the package uses.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import AmbientMismatch, ContractError, ParseError
from .quiver import Path, Quiver, TRIVIAL_PREFIX

Row = dict  # column index -> nonzero Fraction


def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class PathVector:
    """A finite linear combination of paths with nonzero rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Path, object] | Iterable[tuple[Path, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Path, Fraction] = {}
        for p, c in items:
            c = _as_fraction(c)
            if c:
                acc[p] = acc.get(p, Fraction(0)) + c
        self._terms = {p: c for p, c in acc.items() if c}
        self._hash = None

    @classmethod
    def from_path(cls, p: Path, coefficient=1) -> "PathVector":
        return cls({p: coefficient})

    # mapping-ish access
    def items(self):
        return self._terms.items()

    def coefficient(self, p: Path) -> Fraction:
        return self._terms.get(p, Fraction(0))

    def support(self) -> frozenset[Path]:
        return frozenset(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Path]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, PathVector):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic
    def __add__(self, other: "PathVector") -> "PathVector":
        acc = dict(self._terms)
        for p, c in other._terms.items():
            acc[p] = acc.get(p, Fraction(0)) + c
        return PathVector(acc)

    def __neg__(self) -> "PathVector":
        return PathVector({p: -c for p, c in self._terms.items()})

    def __sub__(self, other: "PathVector") -> "PathVector":
        return self + (-other)

    def __mul__(self, scalar) -> "PathVector":
        s = _as_fraction(scalar)
        return PathVector({p: s * c for p, c in self._terms.items()})

    __rmul__ = __mul__

    def endpoints(self) -> tuple[str, str] | None:
        """Common (source, target) when the vector is endpoint-homogeneous and nonzero."""
        ends = {(p.source, p.target) for p in self._terms}
        return next(iter(ends)) if len(ends) == 1 else None

    def homogeneous_parts(self) -> dict[tuple[str, str], "PathVector"]:
        parts: dict[tuple[str, str], dict] = {}
        for p, c in self._terms.items():
            parts.setdefault((p.source, p.target), {})[p] = c
        return {k: PathVector(v) for k, v in parts.items()}

    def truncate(self, maxlen: int) -> "PathVector":
        return PathVector({p: c for p, c in self._terms.items() if p.length <= maxlen})

    def sorted_terms(self, quiver: Quiver | None = None) -> list[tuple[Path, Fraction]]:
        key = quiver.path_key if quiver is not None else (lambda p: (p.length, p.arrows, p.source))
        return sorted(self._terms.items(), key=lambda pc: key(pc[0]))

    def format(self, quiver: Quiver | None = None, algebraic: bool = False) -> str:
        terms = self.sorted_terms(quiver)
        if not terms:
            return "0"
        out = []
        for i, (p, c) in enumerate(terms):
            name = p.algebraic() if algebraic else str(p)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"PathVector({self.format()!r})"


def pairing(v: PathVector, w: PathVector) -> Fraction:
    """Bilinear extension of the Kronecker pairing on paths."""
    if len(w) < len(v):
        v, w = w, v
    return sum((c * w.coefficient(p) for p, c in v.items()), Fraction(0))


# -- text syntax -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)(?=\s*\*)|(?P<op>[-+*])|(?P<name>[^\s+*]+))")


def parse_pathvector(text: str, quiver: Quiver, line: int = 0, column_offset: int = 0) -> PathVector:
    """Parse ``c1*path1 + c2*path2``; paths are ``e_<v>`` or dot-joined arrow ids in traversal order.

    A bare ``-`` inside an arrow id is not allowed; write ``a1 - a2`` with spaces.
    """
    pos = 0
    terms: list[tuple[Path, Fraction]] = []
    sign = Fraction(1)
    coeff: Fraction | None = None
    expect_term = True
    text = text.rstrip()
    if not text.strip():
        raise ParseError("empty vector", line, column_offset + 1)

    def err(msg: str, at: int):
        raise ParseError(msg, line, column_offset + at + 1)

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            err("unexpected character", pos)
        start = m.start(m.lastgroup)
        pos = m.end()
        if m.group("op"):
            op = m.group("op")
            if op == "*":
                if coeff is None or not expect_term:
                    err("'*' must follow a coefficient", start)
                continue
            if expect_term and coeff is None:
                sign = -sign if op == "-" else sign
                continue
            if expect_term:
                err("dangling coefficient", start)
            sign = Fraction(-1 if op == "-" else 1)
            expect_term = True
            continue
        if not expect_term:
            err("missing '+' or '-' between terms", start)
        if m.group("num"):
            if coeff is not None:
                err("two coefficients in a row", start)
            try:
                coeff = Fraction(m.group("num"))
            except ZeroDivisionError:
                err("zero denominator", start)
            continue
        name = m.group("name")
        try:
            p = quiver.path(name)
        except ContractError as e:
            err(str(e), start)
        terms.append((p, sign * (coeff if coeff is not None else 1)))
        sign, coeff, expect_term = Fraction(1), None, False
    if expect_term:
        err("expression ends without a path", len(text))
    return PathVector(terms)


# -- sparse echelon core -----------------------------------------------------


class Echelon:
    """Incrementally maintained reduced row-echelon basis over integer columns."""

    __slots__ = ("rows",)

    def __init__(self, vectors: Iterable[Mapping[int, Fraction]] = ()):
        self.rows: dict[int, Row] = {}
        for v in vectors:
            self.insert(v)

    def __len__(self) -> int:
        return len(self.rows)

    def copy(self) -> "Echelon":
        e = Echelon()
        e.rows = {k: dict(v) for k, v in self.rows.items()}
        return e

    def reduce(self, v: Mapping[int, Fraction]) -> Row:
        """Remainder of ``v`` after eliminating every pivot column."""
        r = {k: c for k, c in v.items() if c}
        for piv in [k for k in r if k in self.rows]:
            c = r.get(piv)
            if not c:
                continue
            for k, x in self.rows[piv].items():
                nv = r.get(k, 0) - c * x
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return r

    def insert(self, v: Mapping[int, Fraction]) -> bool:
        """Add ``v``; returns False if it was already in the span."""
        r = self.reduce(v)
        if not r:
            return False
        piv = min(r)
        inv = 1 / r[piv]
        r = {k: c * inv for k, c in r.items()}
        for row in self.rows.values():
            c = row.get(piv)
            if c:
                for k, x in r.items():
                    nv = row.get(k, 0) - c * x
                    if nv:
                        row[k] = nv
                    else:
                        del row[k]
        self.rows[piv] = r
        return True

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Mapping[int, Fraction]) -> dict[int, Fraction] | None:
        """Coefficients of ``v`` on the rows (keyed by pivot), or None if ``v`` is outside the span."""
        if self.reduce(v):
            return None
        return {piv: v[piv] for piv in self.rows if v.get(piv)}

    def sorted_rows(self) -> list[Row]:
        return [self.rows[k] for k in sorted(self.rows)]

    def nullspace(self, ncols: int) -> list[Row]:
        """Basis of {x : row . x = 0 for every row}, one vector per free column."""
        out = []
        for f in range(ncols):
            if f in self.rows:
                continue
            vec = {f: Fraction(1)}
            for piv, row in self.rows.items():
                c = row.get(f)
                if c:
                    vec[piv] = -c
            out.append(vec)
        return out


def kernel(columns_of: Sequence[Mapping[int, Fraction]], nvars: int) -> list[Row]:
    """Null space of a sparse linear map given column-wise.

    ``columns_of[i]`` maps equation index -> coefficient of variable ``i``.
    """
    eqs: dict[int, dict[int, Fraction]] = {}
    for i, col in enumerate(columns_of):
        for e, c in col.items():
            if c:
                eqs.setdefault(e, {})[i] = c
    ech = Echelon(eqs.values())
    return ech.nullspace(nvars)


# -- subspaces of a path span ------------------------------------------------


class Subspace:
    """A subspace of the span of an ordered ambient path list, held in RREF."""

    __slots__ = ("ambient", "_index", "_ech")

    def __init__(self, ambient: Sequence[Path], echelon: Echelon | None = None):
        self.ambient: tuple[Path, ...] = tuple(ambient)
        self._index = {p: i for i, p in enumerate(self.ambient)}
        if len(self._index) != len(self.ambient):
            raise ContractError("ambient path list has duplicates", module="exactlinalg")
        self._ech = echelon if echelon is not None else Echelon()

    @classmethod
    def span(cls, ambient: Sequence[Path], vectors: Iterable[PathVector]) -> "Subspace":
        s = cls(ambient)
        for v in vectors:
            s._ech.insert(s.to_row(v))
        return s

    @classmethod
    def full(cls, ambient: Sequence[Path]) -> "Subspace":
        return cls.span(ambient, (PathVector.from_path(p) for p in ambient))

    # conversions
    def to_row(self, v: PathVector) -> Row:
        try:
            return {self._index[p]: c for p, c in v.items()}
        except KeyError as e:
            raise AmbientMismatch(f"path {e.args[0]} is not in the ambient") from None

    def to_vector(self, row: Mapping[int, Fraction]) -> PathVector:
        return PathVector({self.ambient[i]: c for i, c in row.items()})

    # queries
    @property
    def dim(self) -> int:
        return len(self._ech)

    def __len__(self) -> int:
        return self.dim

    def rows(self) -> list[Row]:
        return self._ech.sorted_rows()

    def basis(self) -> list[PathVector]:
        """RREF rows as path vectors, ordered by pivot."""
        return [self.to_vector(r) for r in self._ech.sorted_rows()]

    def pivots(self) -> list[Path]:
        return [self.ambient[k] for k in sorted(self._ech.rows)]

    def covers(self, v: PathVector) -> bool:
        return all(p in self._index for p in v)

    def member(self, v: PathVector) -> bool:
        """Raises AmbientMismatch when ``v`` uses a path outside the ambient."""
        return self._ech.contains(self.to_row(v))

    def __contains__(self, v: PathVector) -> bool:
        return self.member(v)

    def coordinates(self, v: PathVector) -> dict[Path, Fraction] | None:
        """Coefficients of ``v`` on the basis, keyed by pivot path; None if ``v`` is outside."""
        if not self.covers(v):
            return None
        coords = self._ech.coordinates(self.to_row(v))
        if coords is None:
            return None
        return {self.ambient[k]: c for k, c in coords.items()}

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.member(v) for v in other.basis())

    def psupp(self) -> frozenset[Path]:
        return frozenset(self.ambient[k] for r in self._ech.rows.values() for k in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.rows() == other.rows()

    def __hash__(self):
        return hash((self.ambient, tuple(tuple(sorted(r.items())) for r in self.rows())))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={len(self.ambient)}, basis={[str(b) for b in self.basis()]})"

    # constructions
    def add(self, v: PathVector) -> bool:
        """Enlarge in place; returns True when the dimension grew."""
        return self._ech.insert(self.to_row(v))

    def copy(self) -> "Subspace":
        return Subspace(self.ambient, self._ech.copy())

    def _check_same(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise AmbientMismatch()

    def join(self, other: "Subspace") -> "Subspace":
        self._check_same(other)
        s = self.copy()
        for r in other.rows():
            s._ech.insert(r)
        return s

    def orthogonal(self) -> "Subspace":
        ech = Echelon(self._ech.nullspace(len(self.ambient)))
        return Subspace(self.ambient, ech)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_same(other)
        return self.orthogonal().join(other.orthogonal()).orthogonal()

    def restrict(self, ambient: Sequence[Path]) -> "Subspace":
        """Intersection with the span of a sub-list of the ambient (re-indexed)."""
        ambient = tuple(ambient)
        keep = set(ambient)
        missing = [p for p in ambient if p not in self._index]
        if missing:
            raise AmbientMismatch(f"{missing[0]} is not in the ambient")
        inter = self.intersect(Subspace.span(self.ambient, (PathVector.from_path(p) for p in ambient)))
        return Subspace.span(ambient, (v for v in inter.basis() if v.support() <= keep))

    def extend(self, ambient: Sequence[Path]) -> "Subspace":
        """The same subspace inside a larger ambient list."""
        return Subspace.span(ambient, self.basis())


def rref(vectors: Iterable[PathVector], ambient: Sequence[Path]) -> Subspace:
    return Subspace.span(ambient, vectors)


def member(v: PathVector, s: Subspace) -> bool:
    return s.member(v)


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    return s1.intersect(s2)


def orthogonal(s: Subspace, ambient: Sequence[Path] | None = None) -> Subspace:
    if ambient is not None and tuple(ambient) != s.ambient:
        raise AmbientMismatch()
    return s.orthogonal()


__all__ = [
    "PathVector",
    "Subspace",
    "Echelon",
    "kernel",
    "pairing",
    "parse_pathvector",
    "rref",
    "member",
    "intersect",
    "orthogonal",
    "TRIVIAL_PREFIX",
]
