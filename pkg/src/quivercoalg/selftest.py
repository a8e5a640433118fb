"""Randomized property suites, run by ``quivercoalg selftest`` with a printed seed."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from .coalgebra import full_path_coalgebra, is_admissible, is_subcoalgebra, splits
from .comodules import (
    cotensor_section,
    comodule_from_subspace,
    hom_simple,
    length_vector,
    quotient_functor,
    validate,
)
from .generators import (
    random_basis_change,
    random_closure,
    random_comodule,
    random_element,
    random_path,
    random_quiver,
    random_relations,
    random_subset,
)
from .localization import classify_idempotent, localize_coalgebra
from .quiver import cellular_decomposition, is_cell, tail_decomposition
from .relations import coalgebra_of_relations, relations_of_coalgebra, truncated_ideal_span


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.trials} trials, {len(self.failures)} failures"


def _concat(q, parts):
    arrows = tuple(a for p in parts for a in p.arrows)
    return q.path(arrows) if arrows else None


def coalgebra_axioms(rng: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("coalgebra axioms")
    for _ in range(trials):
        q = random_quiver(rng, 4, 6, acyclic=rng.random() < 0.5)
        p = random_path(rng, q, 8)
        res.trials += 1
        left = Counter((ll, lr, r) for l, r in splits(q, p) for ll, lr in splits(q, l))
        right = Counter((l, rl, rr) for l, r in splits(q, p) for rl, rr in splits(q, r))
        if left != right:
            res.failures.append(f"coassociativity fails for {p}")
        if [r for l, r in splits(q, p) if l.is_trivial] != [p] or [l for l, r in splits(q, p) if r.is_trivial] != [p]:
            res.failures.append(f"counit fails for {p}")
    for _ in range(max(1, trials // 20)):
        q = random_quiver(rng, 5, 8)
        c = random_closure(rng, q, 4)
        res.trials += 1
        if not (is_subcoalgebra(c) and is_admissible(c)):
            res.failures.append("closure is not an admissible subcoalgebra")
    return res


def decompositions(rng: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("cell and tail decompositions")
    for _ in range(trials):
        q = random_quiver(rng, 5, 8, acyclic=rng.random() < 0.7)
        X = random_subset(rng, q)
        for a in X:
            for p in q.paths_from(a, 5):
                if p.target not in X or p.is_trivial:
                    continue
                res.trials += 1
                cells = cellular_decomposition(q, p, X)
                if _concat(q, cells) != p or not all(is_cell(q, c, X) for c in cells):
                    res.failures.append(f"cellular decomposition of {p}")
            for p in q.paths_from(a, 5):
                if p.is_trivial or p.target in X:
                    continue
                cells, tail = tail_decomposition(q, p, X)
                parts = list(cells) + ([tail] if tail is not None else [])
                res.trials += 1
                if _concat(q, parts) != p:
                    res.failures.append(f"tail decomposition of {p}")
    return res


def duality(rng: random.Random, trials: int, maxlen: int = 6) -> SuiteResult:
    res = SuiteResult("relation duality round trip")
    for _ in range(trials):
        q = random_quiver(rng, 6, 10)
        res.trials += 1
        gens = random_relations(rng, q, maxlen)
        ideal = truncated_ideal_span(q, gens, maxlen)
        back = relations_of_coalgebra(coalgebra_of_relations(q, ideal))
        if not back.same_span(ideal):
            res.failures.append(f"ideal round trip on {len(q.arrows)} arrows")
        h = random_closure(rng, q, maxlen)
        if coalgebra_of_relations(q, relations_of_coalgebra(h)) != h:
            res.failures.append("coalgebra round trip")
    return res


def _small_coalgebra(rng: random.Random):
    q = random_quiver(rng, 4, 5)
    return random_closure(rng, q, 3, max_generators=2)


def functoriality(rng: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("length vector functoriality")
    for _ in range(trials):
        c = _small_coalgebra(rng)
        m = random_comodule(rng, c)
        X = random_subset(rng, c.quiver)
        res.trials += 1
        if not validate(m)[0]:
            res.failures.append("random comodule is invalid")
            continue
        em = quotient_functor(m, X)
        lm, lem = length_vector(m), length_vector(em)
        if lem != lm.restrict(X) or lem.total > lm.total:
            res.failures.append(f"length({lem}) vs restriction of {lm} to {X}")
    return res


def ts_identity(rng: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("TS is the identity")
    for _ in range(trials):
        c = _small_coalgebra(rng)
        X = random_subset(rng, c.quiver)
        loc = localize_coalgebra(c, X)
        n = None
        for _ in range(10):
            cand = comodule_from_subspace(loc.coalgebra, [random_element(rng, loc.coalgebra)])
            if cand.dim <= 6:
                n = random_basis_change(rng, cand)
                break
        if n is None:
            continue
        res.trials += 1
        back = quotient_functor(cotensor_section(n, c, X, loc), X, loc)
        if length_vector(back) != length_vector(n):
            res.failures.append("length vectors differ")
        elif any(len(hom_simple(back, x)) != len(hom_simple(n, x)) for x in loc.X):
            res.failures.append("hom spaces differ")
    return res


def semicentral_split(rng: random.Random, trials: int) -> SuiteResult:
    res = SuiteResult("semicentral implies split")
    for _ in range(trials):
        q = random_quiver(rng, 5, 7, acyclic=rng.random() < 0.8)
        c = random_closure(rng, q, 3) if rng.random() < 0.8 else full_path_coalgebra(q, 3)
        X = random_subset(rng, q)
        cls = classify_idempotent(c, X)
        res.trials += 1
        if (cls.left_semicentral or cls.right_semicentral) and not cls.split:
            res.failures.append(f"X={X} semicentral but not split")
        if cls.split != cls.ece_is_subcoalgebra:
            res.failures.append(f"X={X} split criterion disagrees with subcoalgebra test")
    return res


SUITES: dict[str, tuple[Callable[[random.Random, int], SuiteResult], int]] = {
    "axioms": (coalgebra_axioms, 200),
    "decompositions": (decompositions, 20),
    "duality": (duality, 20),
    "functoriality": (functoriality, 30),
    "cotensor": (ts_identity, 15),
    "split": (semicentral_split, 100),
}


def run(seed: int, scale: float = 1.0, only: list[str] | None = None) -> list[SuiteResult]:
    out = []
    for name, (fn, n) in SUITES.items():
        if only and name not in only:
            continue
        out.append(fn(random.Random(f"{seed}:{name}"), max(1, int(n * scale))))
    return out
