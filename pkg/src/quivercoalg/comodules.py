"""Finite-dimensional right comodules over truncated path subcoalgebras.

A comodule of dimension m is stored by its coaction table:
``rho(m_i) = sum_j m_j ⊗ coaction[i, j]`` with coalgebra elements as
:class:`PathVector`.  The module leg always comes first.

Internally every path p in the table gives an m x m matrix ``A_p`` with
``rho(v) = sum_p A_p v ⊗ p``; kernels and images are taken with the sparse
:class:`~quivercoalg.linalg.Echelon` over basis indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .coalgebra import GradedSubcoalgebra, counit, delta_elem, splits
from .errors import ContractError, DimensionOverflow
from .linalg import Echelon, PathVector, kernel
from .localization import Localization, localize_coalgebra
from .quiver import Path

Vec = dict  # basis index -> Fraction

DEFAULT_CAP = 20000


class LengthVector(dict):
    """Multiplicity of each simple comodule, keyed by vertex; zero entries are dropped."""

    def __init__(self, data: Mapping[str, int] | Iterable = ()):
        super().__init__()
        items = data.items() if isinstance(data, Mapping) else data
        for k, v in items:
            if v:
                self[k] = self.get(k, 0) + v

    @property
    def total(self) -> int:
        return sum(self.values())

    def restrict(self, vertices: Iterable[str]) -> "LengthVector":
        keep = set(vertices)
        return LengthVector({k: v for k, v in self.items() if k in keep})

    def __add__(self, other: Mapping[str, int]) -> "LengthVector":
        out = LengthVector(self)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return LengthVector(out)


class FinComodule:
    def __init__(self, coalgebra: GradedSubcoalgebra, dim: int, coaction: Mapping[tuple[int, int], PathVector]):
        if dim < 0:
            raise ContractError("negative dimension", module="comodules")
        self.coalgebra = coalgebra
        self.dim = dim
        self.coaction: dict[tuple[int, int], PathVector] = {}
        for (i, j), c in coaction.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ContractError(f"coaction index ({i}, {j}) out of range", module="comodules")
            if c:
                self.coaction[(i, j)] = c
        self._mats: dict[Path, dict[tuple[int, int], Fraction]] | None = None

    @property
    def quiver(self):
        return self.coalgebra.quiver

    def matrices(self) -> dict[Path, dict[tuple[int, int], Fraction]]:
        """``A_p[(j, i)]`` = coefficient of p in coaction[i, j]."""
        if self._mats is None:
            mats: dict[Path, dict[tuple[int, int], Fraction]] = {}
            for (i, j), c in self.coaction.items():
                for p, x in c.items():
                    mats.setdefault(p, {})[(j, i)] = x
            self._mats = mats
        return self._mats

    def paths(self) -> list[Path]:
        return self.quiver.sort_paths(self.matrices())

    def act(self, p: Path, v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for (j, i), x in self.matrices().get(p, {}).items():
            c = v.get(i)
            if c:
                out[j] = out.get(j, 0) + x * c
        return {k: c for k, c in out.items() if c}

    def weight_projector(self, vertices: Iterable[str]) -> list[Vec]:
        """Images of the basis under the idempotent attached to ``vertices``."""
        vs = list(vertices)
        cols = []
        for i in range(self.dim):
            acc: Vec = {}
            for x in vs:
                for k, c in self.act(Path.trivial(x), {i: Fraction(1)}).items():
                    acc[k] = acc.get(k, 0) + c
            cols.append({k: c for k, c in acc.items() if c})
        return cols

    def rho(self, v: Mapping[int, Fraction]) -> dict[Path, Vec]:
        out = {}
        for p in self.matrices():
            w = self.act(p, v)
            if w:
                out[p] = w
        return out

    def __repr__(self) -> str:
        return f"FinComodule(dim={self.dim}, entries={len(self.coaction)})"


# -- axioms ------------------------------------------------------------------


@dataclass
class Diagnostic:
    axiom: str
    index: tuple[int, ...]
    detail: str

    def __str__(self):
        return f"{self.axiom} fails at {self.index}: {self.detail}"


def validate(m: FinComodule) -> tuple[bool, list[Diagnostic]]:
    """Check membership in the coalgebra, the counit law and coassociativity exactly."""
    diags: list[Diagnostic] = []
    for (i, j), c in sorted(m.coaction.items()):
        if not m.coalgebra.member(c):
            diags.append(Diagnostic("membership", (i, j), f"{c} is not in the coalgebra"))
    for i in range(m.dim):
        for j in range(m.dim):
            e = counit(m.coaction.get((i, j), PathVector()))
            want = 1 if i == j else 0
            if e != want:
                diags.append(Diagnostic("counit", (i, j), f"counit gives {e}, expected {want}"))
    by_target: dict[int, list[tuple[int, PathVector]]] = {}
    for (j, k), c in m.coaction.items():
        by_target.setdefault(k, []).append((j, c))
    q = m.quiver
    for i in range(m.dim):
        row = {j: c for (ii, j), c in m.coaction.items() if ii == i}
        for k in range(m.dim):
            lhs = delta_elem(q, m.coaction.get((i, k), PathVector()))
            rhs: dict[tuple[Path, Path], Fraction] = {}
            for j, cjk in by_target.get(k, []):
                cij = row.get(j)
                if not cij:
                    continue
                for p, x in cjk.items():
                    for r, y in cij.items():
                        rhs[(p, r)] = rhs.get((p, r), 0) + x * y
            rhs = {key: c for key, c in rhs.items() if c}
            if dict(lhs.items()) != rhs:
                diags.append(Diagnostic("coassociativity", (i, k), "Δ(c_ik) != Σ_j c_jk ⊗ c_ij"))
    return not diags, diags


# -- constructions -----------------------------------------------------------


def simple(coalgebra: GradedSubcoalgebra, x: str) -> FinComodule:
    coalgebra.quiver.check_vertices([x])
    return FinComodule(coalgebra, 1, {(0, 0): PathVector.from_path(Path.trivial(x))})


def _coordinates(ech: Echelon, v: Mapping[int, Fraction], what: str) -> dict[int, Fraction]:
    coords = ech.coordinates(v)
    if coords is None:
        raise ContractError(f"{what}: subspace is not closed under the coaction", module="comodules")
    return coords


def subcomodule(m: FinComodule, vectors: Iterable[Mapping[int, Fraction]]) -> tuple[FinComodule, list[Vec]]:
    """The comodule on an invariant subspace; returns it with its basis (RREF rows, as vectors of ``m``)."""
    ech = Echelon(vectors)
    pivots = sorted(ech.rows)
    pos = {p: k for k, p in enumerate(pivots)}
    basis = [ech.rows[p] for p in pivots]
    table: dict[tuple[int, int], dict[Path, Fraction]] = {}
    for k, r in enumerate(basis):
        for p, w in m.rho(r).items():
            for piv, c in _coordinates(ech, w, "subcomodule").items():
                table.setdefault((k, pos[piv]), {})[p] = c
    return FinComodule(m.coalgebra, len(basis), {k: PathVector(v) for k, v in table.items()}), [dict(b) for b in basis]


def quotient_comodule(m: FinComodule, vectors: Iterable[Mapping[int, Fraction]]) -> FinComodule:
    """M / W for an invariant subspace W; the basis is the classes of the non-pivot basis vectors."""
    ech = Echelon(vectors)
    free = [i for i in range(m.dim) if i not in ech.rows]
    pos = {f: k for k, f in enumerate(free)}
    for r in ech.rows.values():
        for p, w in m.rho(r).items():
            if ech.reduce(w):
                raise ContractError("quotient by a non-invariant subspace", module="comodules")
    table: dict[tuple[int, int], dict[Path, Fraction]] = {}
    for f in free:
        for p, w in m.rho({f: Fraction(1)}).items():
            for g, c in ech.reduce(w).items():
                table.setdefault((pos[f], pos[g]), {})[p] = c
    return FinComodule(m.coalgebra, len(free), {k: PathVector(v) for k, v in table.items()})


def direct_sum(m: FinComodule, n: FinComodule) -> FinComodule:
    if m.coalgebra is not n.coalgebra and m.coalgebra != n.coalgebra:
        raise ContractError("direct sum of comodules over different coalgebras", module="comodules")
    table = dict(m.coaction)
    for (i, j), c in n.coaction.items():
        table[(i + m.dim, j + m.dim)] = c
    return FinComodule(m.coalgebra, m.dim + n.dim, table)


def _inverse(mat: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ContractError("basis change is singular", module="comodules")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def change_basis(m: FinComodule, P: Sequence[Sequence[Fraction]]) -> FinComodule:
    """New basis n_k = sum_i P[i][k] m_i."""
    Pinv = _inverse(P)
    n = m.dim
    table: dict[tuple[int, int], PathVector] = {}
    for k in range(n):
        for l in range(n):
            acc = PathVector()
            for i in range(n):
                if not P[i][k]:
                    continue
                for j in range(n):
                    if Pinv[l][j] and (i, j) in m.coaction:
                        acc = acc + m.coaction[(i, j)] * (P[i][k] * Pinv[l][j])
            if acc:
                table[(k, l)] = acc
    return FinComodule(m.coalgebra, n, table)


def comodule_from_subspace(c: GradedSubcoalgebra, generators: Iterable[PathVector]) -> FinComodule:
    """Sub-comodule of C (coaction Δ) generated by elements of C."""
    paths = [p for a in c.quiver.vertices for p in c.quiver.paths_from(a, c.maxlen)]
    index = {p: i for i, p in enumerate(paths)}
    ech = Echelon()
    queue = []
    for g in generators:
        if not c.member(g):
            raise ContractError(f"{g} is not in the coalgebra", module="comodules")
        queue.append(g)
    # the sub-comodule generated by v is spanned by its contractions on the coalgebra leg
    for g in queue:
        table: dict[Path, dict[Path, Fraction]] = {}
        for p, x in g.items():
            for later, earlier in splits(c.quiver, p):
                d = table.setdefault(earlier, {})
                d[later] = d.get(later, 0) + x
        for d in table.values():
            ech.insert({index[p]: x for p, x in d.items() if x})
    pivots = sorted(ech.rows)
    pos = {p: k for k, p in enumerate(pivots)}
    coaction: dict[tuple[int, int], dict[Path, Fraction]] = {}
    for k, piv in enumerate(pivots):
        row = ech.rows[piv]
        legs: dict[Path, dict[int, Fraction]] = {}
        for col, x in row.items():
            for later, earlier in splits(c.quiver, paths[col]):
                d = legs.setdefault(earlier, {})
                d[index[later]] = d.get(index[later], 0) + x
        for tau, w in legs.items():
            for pv, y in _coordinates(ech, {i: x for i, x in w.items() if x}, "regular comodule").items():
                coaction.setdefault((k, pos[pv]), {})[tau] = y
    return FinComodule(c, len(pivots), {k: PathVector(v) for k, v in coaction.items()})


# -- hom spaces, socles, length vectors --------------------------------------


def hom_simple(m: FinComodule, x: str) -> Echelon:
    """{v : rho(v) = v ⊗ e_x}, as an echelon basis over the comodule's basis indices."""
    m.quiver.check_vertices([x])
    ex = Path.trivial(x)
    cols = []
    mats = m.paths()
    for i in range(m.dim):
        col: dict[int, Fraction] = {}
        unit = {i: Fraction(1)}
        for n, p in enumerate(mats):
            w = m.act(p, unit)
            if p == ex:
                w = dict(w)
                w[i] = w.get(i, 0) - 1
            for j, c in w.items():
                if c:
                    col[n * m.dim + j] = c
        if ex not in mats:
            col[len(mats) * m.dim + i] = Fraction(-1)
        cols.append(col)
    return Echelon(kernel(cols, m.dim))


def _annihilator(ech: Echelon, n: int) -> list[Vec]:
    return ech.nullspace(n)


def _image_rank(m: FinComodule, p: Path, space: Echelon) -> int:
    return len(Echelon(m.act(p, r) for r in space.rows.values()))


@dataclass
class SocleLayer:
    space: Echelon
    multiplicities: LengthVector


def socle_filtration(m: FinComodule) -> list[SocleLayer]:
    """soc^1 ⊆ soc^2 ⊆ ... = M with the simple multiplicities of each layer."""
    nontrivial = [p for p in m.paths() if not p.is_trivial]
    vertices = m.quiver.vertices
    layers: list[SocleLayer] = []
    prev = Echelon()
    while len(prev) < m.dim:
        ann = _annihilator(prev, m.dim)
        cols = []
        for i in range(m.dim):
            unit = {i: Fraction(1)}
            col = {}
            for n, p in enumerate(nontrivial):
                w = m.act(p, unit)
                for k, f in enumerate(ann):
                    s = sum((f.get(j, 0) * c for j, c in w.items()), Fraction(0))
                    if s:
                        col[n * len(ann) + k] = s
            cols.append(col)
        cur = Echelon(kernel(cols, m.dim))
        if len(cur) <= len(prev):
            raise ContractError("socle filtration stalled; the coaction is not a comodule", module="comodules")
        mult = LengthVector({x: _image_rank(m, Path.trivial(x), cur) - _image_rank(m, Path.trivial(x), prev)
                             for x in vertices})
        layers.append(SocleLayer(cur, mult))
        prev = cur
    return layers


def socle(m: FinComodule) -> tuple[FinComodule, LengthVector]:
    layers = socle_filtration(m)
    if not layers:
        return FinComodule(m.coalgebra, 0, {}), LengthVector()
    sub, _ = subcomodule(m, layers[0].space.rows.values())
    return sub, layers[0].multiplicities


def length_vector(m: FinComodule) -> LengthVector:
    out = LengthVector()
    for layer in socle_filtration(m):
        out = out + layer.multiplicities
    return out


def loewy_length(m: FinComodule) -> int:
    return len(socle_filtration(m))


# -- localization functors ---------------------------------------------------


def _localization(c: GradedSubcoalgebra, X, loc: Localization | None) -> Localization:
    if loc is not None:
        if loc.source is not c and loc.source != c:
            raise ContractError("localization was computed for a different coalgebra", module="comodules")
        if set(loc.X) != set(c.quiver.check_vertices(X)):
            raise ContractError("localization was computed for a different vertex set", module="comodules")
        return loc
    return localize_coalgebra(c, X)


def quotient_functor(m: FinComodule, X: Iterable[str], loc: Localization | None = None) -> FinComodule:
    """eM as a right comodule over eCe (expressed over the localized quiver)."""
    X = list(X)
    loc = _localization(m.coalgebra, X, loc)
    Xset = set(loc.X)
    E = m.weight_projector(loc.X)
    ech = Echelon(E)
    pivots = sorted(ech.rows)
    pos = {p: k for k, p in enumerate(pivots)}

    def project(v: Vec) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            for j, x in E[i].items():
                out[j] = out.get(j, 0) + c * x
        return {k: c for k, c in out.items() if c}

    table: dict[tuple[int, int], dict[Path, Fraction]] = {}
    for k, piv in enumerate(pivots):
        r = ech.rows[piv]
        buckets: dict[Path, Vec] = {}
        for p, w in m.rho(r).items():
            if p.source not in Xset or p.target not in Xset:
                continue
            u = loc.lquiver.reexpress_path(p)
            if u is None:
                continue
            b = buckets.setdefault(u, {})
            for j, c in project(w).items():
                b[j] = b.get(j, 0) + c
        for u, w in buckets.items():
            w = {j: c for j, c in w.items() if c}
            if not w:
                continue
            for pv, c in _coordinates(ech, w, "quotient functor").items():
                table.setdefault((k, pos[pv]), {})[u] = c
    return FinComodule(loc.coalgebra, len(pivots), {key: PathVector(v) for key, v in table.items()})


def comodule_of_eC(c: GradedSubcoalgebra, X: Iterable[str], loc: Localization | None = None) -> tuple[FinComodule, list[PathVector]]:
    """eC (components C_ab with a in X) as a right eCe-comodule; returns it with its basis in C."""
    X = list(X)
    loc = _localization(c, X, loc)
    Xset = set(loc.X)
    q = c.quiver
    basis = [v for (a, b), s in c.items() if a in Xset for v in s.basis()]
    paths = [p for a in loc.X for p in q.paths_from(a, c.maxlen)]
    index = {p: i for i, p in enumerate(paths)}
    ech = Echelon()
    order = []
    for v in basis:
        row = {index[p]: x for p, x in v.items()}
        ech.insert(row)
        order.append(min(row))
    # rows of distinct components have disjoint supports, so the echelon rows are exactly `basis`
    pos = {piv: k for k, piv in enumerate(order)}
    table: dict[tuple[int, int], dict[Path, Fraction]] = {}
    for k, v in enumerate(basis):
        buckets: dict[Path, Vec] = {}
        for p, x in v.items():
            for later, earlier in splits(q, p):
                if later.source not in Xset:
                    continue
                u = loc.lquiver.reexpress_path(earlier)
                if u is None:
                    continue
                b = buckets.setdefault(u, {})
                col = index[later]
                b[col] = b.get(col, 0) + x
        for u, w in buckets.items():
            w = {j: y for j, y in w.items() if y}
            if not w:
                continue
            for piv, y in _coordinates(ech, w, "eC").items():
                table.setdefault((k, pos[piv]), {})[u] = y
    m = FinComodule(loc.coalgebra, len(basis), {key: PathVector(val) for key, val in table.items()})
    return m, basis


def cotensor_section(n: FinComodule, c: GradedSubcoalgebra, X: Iterable[str], loc: Localization | None = None,
                     cap: int = DEFAULT_CAP) -> FinComodule:
    """N □_{eCe} Ce with the right C-coaction inherited from Ce.

    The kernel of ``rho_N ⊗ 1 - 1 ⊗ lambda`` is solved inside N ⊗ Ce, where
    ``lambda`` is the left eCe-coaction of Ce.
    """
    X = list(X)
    loc = _localization(c, X, loc)
    if n.coalgebra is not loc.coalgebra and n.coalgebra != loc.coalgebra:
        raise ContractError("N must be a comodule over the localized coalgebra", module="comodules")
    Xset = set(loc.X)
    q = c.quiver
    ce = [v for (a, b), s in c.items() if b in Xset for v in s.basis()]
    nvars = n.dim * len(ce)
    if nvars > cap:
        raise DimensionOverflow(f"N ⊗ Ce has dimension {nvars} > cap {cap}")

    eq_index: dict[tuple, int] = {}

    def eq(key) -> int:
        i = eq_index.get(key)
        if i is None:
            i = eq_index[key] = len(eq_index)
        return i

    # left eCe-coaction of each basis vector of Ce: (word in the localized quiver, path in Q) -> coefficient
    lam: list[dict[tuple[Path, Path], Fraction]] = []
    for w in ce:
        d: dict[tuple[Path, Path], Fraction] = {}
        for p, x in w.items():
            for later, earlier in splits(q, p):
                if later.source not in Xset:
                    continue
                u = loc.lquiver.reexpress_path(later)
                if u is not None:
                    d[(u, earlier)] = d.get((u, earlier), 0) + x
        lam.append({k: v for k, v in d.items() if v})

    rows_of_n: dict[int, list[tuple[int, PathVector]]] = {}
    for (i, j), cv in n.coaction.items():
        rows_of_n.setdefault(i, []).append((j, cv))

    cols = []
    for i in range(n.dim):
        for qi, w in enumerate(ce):
            col: dict[int, Fraction] = {}
            for j, cv in rows_of_n.get(i, []):
                for u, x in cv.items():
                    for t, y in w.items():
                        k = eq((j, u, t))
                        col[k] = col.get(k, 0) + x * y
            for (u, t), y in lam[qi].items():
                k = eq((i, u, t))
                col[k] = col.get(k, 0) - y
            cols.append({k: v for k, v in col.items() if v})
    ker = kernel(cols, nvars)

    # express kernel vectors in N ⊗ KQ coordinates (i, path)
    coord: dict[tuple[int, Path], int] = {}

    def cidx(key) -> int:
        i = coord.get(key)
        if i is None:
            i = coord[key] = len(coord)
        return i

    ech = Echelon()
    for z in ker:
        vec: dict[int, Fraction] = {}
        for var, zv in z.items():
            i, qi = divmod(var, len(ce))
            for p, x in ce[qi].items():
                k = cidx((i, p))
                vec[k] = vec.get(k, 0) + zv * x
        ech.insert({k: v for k, v in vec.items() if v})
    keys = {v: k for k, v in coord.items()}
    pivots = sorted(ech.rows)
    pos = {p: k for k, p in enumerate(pivots)}
    table: dict[tuple[int, int], dict[Path, Fraction]] = {}
    for k, piv in enumerate(pivots):
        buckets: dict[Path, Vec] = {}
        for col, x in ech.rows[piv].items():
            i, p = keys[col]
            for later, earlier in splits(q, p):
                b = buckets.setdefault(earlier, {})
                kk = cidx((i, later))
                b[kk] = b.get(kk, 0) + x
        for tau, w in buckets.items():
            w = {j: y for j, y in w.items() if y}
            if not w:
                continue
            for pv, y in _coordinates(ech, w, "cotensor section").items():
                table.setdefault((k, pos[pv]), {})[tau] = y
    return FinComodule(c, len(pivots), {key: PathVector(v) for key, v in table.items()})
