"""Random instances for the property suites and the ``selftest`` command.

Every function takes a :class:`random.Random` so runs are reproducible from a seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .coalgebra import GradedSubcoalgebra, subcoalgebra_closure
from .comodules import (
    FinComodule,
    change_basis,
    comodule_from_subspace,
    direct_sum,
    quotient_comodule,
    simple,
    socle_filtration,
)
from .linalg import PathVector
from .quiver import Path, Quiver, enumerate_paths

COEFFS = (-2, -1, 1, 2)


def random_quiver(rng: random.Random, max_vertices: int = 6, max_arrows: int = 10, acyclic: bool = True,
                  min_vertices: int = 2) -> Quiver:
    n = rng.randint(min_vertices, max_vertices)
    vs = tuple(f"v{i}" for i in range(n))
    m = rng.randint(min(max_arrows, n), max_arrows)
    arrows = []
    for k in range(m):
        if acyclic:
            a, b = sorted(rng.sample(range(n), 2))
        else:
            a, b = rng.randrange(n), rng.randrange(n)
        arrows.append((f"a{k}", vs[a], vs[b]))
    return Quiver(vs, tuple(arrows))


def random_path(rng: random.Random, q: Quiver, maxlen: int) -> Path:
    v = rng.choice(q.vertices)
    arrows = []
    for _ in range(rng.randint(0, maxlen)):
        out = q.out_arrows(v)
        if not out:
            break
        a = rng.choice(out)
        arrows.append(a.id)
        v = a.target
    return q.path(arrows) if arrows else Path.trivial(v)


def random_subset(rng: random.Random, q: Quiver) -> list[str]:
    k = rng.randint(1, len(q.vertices))
    return q.sort_vertices(rng.sample(q.vertices, k))


def _long_components(q: Quiver, lo: int, hi: int) -> list[list[Path]]:
    comps = []
    for a in q.vertices:
        for b in q.vertices:
            ps = [p for p in enumerate_paths(q, a, b, hi) if p.length >= lo]
            if ps:
                comps.append(ps)
    return comps


def random_combination(rng: random.Random, paths: list[Path], max_terms: int = 3) -> PathVector:
    while True:
        chosen = rng.sample(paths, min(len(paths), rng.randint(1, max_terms)))
        v = PathVector({p: rng.choice(COEFFS) for p in chosen})
        if v:
            return v


def random_relations(rng: random.Random, q: Quiver, maxlen: int, max_generators: int = 3) -> list[PathVector]:
    comps = _long_components(q, 2, maxlen)
    if not comps:
        return []
    return [random_combination(rng, rng.choice(comps)) for _ in range(rng.randint(1, max_generators))]


def random_closure(rng: random.Random, q: Quiver, maxlen: int, max_generators: int = 3) -> GradedSubcoalgebra:
    """Admissible closure of a few random homogeneous elements of length >= 2."""
    comps = _long_components(q, 2, maxlen)
    gens = []
    if comps:
        gens = [random_combination(rng, rng.choice(comps)) for _ in range(rng.randint(0, max_generators))]
    return subcoalgebra_closure(q, gens, maxlen, admissible=True)


def random_element(rng: random.Random, c: GradedSubcoalgebra) -> PathVector:
    items = c.items()
    # favour components reaching far, they generate the larger comodules
    weights = [1 + max(p.length for v in s.basis() for p in v) ** 2 for _, s in items]
    _, s = rng.choices(items, weights)[0]
    basis = s.basis()
    acc = PathVector()
    while not acc:
        for v in rng.sample(basis, rng.randint(1, min(2, len(basis)))):
            acc = acc + v * rng.choice(COEFFS)
    return acc


def random_basis_change(rng: random.Random, m: FinComodule) -> FinComodule:
    n = m.dim
    if n < 2:
        return m
    perm = list(range(n))
    rng.shuffle(perm)
    # unitriangular matrix with shuffled rows and columns is always invertible
    P = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        P[perm[i]][perm[i]] = Fraction(1)
        for j in range(i + 1, n):
            if rng.random() < 0.3:
                P[perm[i]][perm[j]] = Fraction(rng.choice(COEFFS))
    return change_basis(m, P)


def random_comodule(rng: random.Random, c: GradedSubcoalgebra, max_dim: int = 8) -> FinComodule:
    """A sub-comodule of C generated by random elements, then optionally summed, quotiented and rebased."""
    m = None
    for _ in range(20):
        cand = comodule_from_subspace(c, [random_element(rng, c) for _ in range(rng.randint(1, 2))])
        if cand.dim <= max_dim:
            m = cand
            break
    if m is None:
        m = simple(c, rng.choice(c.quiver.vertices))
    roll = rng.random()
    if roll < 0.25 and m.dim < max_dim:
        m = direct_sum(m, simple(c, rng.choice(c.quiver.vertices)))
    elif roll < 0.45 and m.dim > 1:
        soc = socle_filtration(m)[0].space
        if len(soc) < m.dim:
            m = quotient_comodule(m, soc.rows.values())
    if rng.random() < 0.7:
        m = random_basis_change(rng, m)
    return m
