"""The ten acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict; ``conftest.py`` prints the
lines at the end of the pytest run and ``python3 tests/test_acceptance.py``
prints them directly.
"""

from __future__ import annotations

import random
import sys
import time
from collections import Counter
from pathlib import Path as FsPath

sys.path.insert(0, str(FsPath(__file__).parent))

from oracles import brute_cells, brute_tail, length_by_weights  # noqa: E402

from quivercoalg import catalog  # noqa: E402
from quivercoalg.coalgebra import (  # noqa: E402
    counit,
    delta,
    full_path_coalgebra,
    is_admissible,
    is_subcoalgebra,
    subcoalgebra_closure,
    tameness_diagnostic,
)
from quivercoalg.comodules import (  # noqa: E402
    comodule_from_subspace,
    comodule_of_eC,
    cotensor_section,
    hom_simple,
    length_vector,
    loewy_length,
    quotient_functor,
    socle,
    subcomodule,
    validate,
)
from quivercoalg.generators import (  # noqa: E402
    random_basis_change,
    random_closure,
    random_comodule,
    random_element,
    random_path,
    random_quiver,
    random_relations,
    random_subset,
)
from quivercoalg.linalg import PathVector, parse_pathvector  # noqa: E402
from quivercoalg.localization import (  # noqa: E402
    classify_idempotent,
    localize_coalgebra,
    localized_quiver,
    tail_space,
)
from quivercoalg.quiver import Path, cellular_decomposition, tail_decomposition  # noqa: E402
from quivercoalg.relations import (  # noqa: E402
    coalgebra_of_relations,
    criterion_witness,
    relations_of_coalgebra,
    truncated_ideal_span,
)

SEED = 20261018
TIME_LIMIT = 10.0
RESULTS: dict[int, str] = {}


class Verdict:
    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.failures: list[str] = []
        self.checks = 0
        self.start = time.perf_counter()

    def check(self, ok: bool, what: str):
        self.checks += 1
        if not ok:
            self.failures.append(what)

    def finish(self):
        elapsed = time.perf_counter() - self.start
        if elapsed >= TIME_LIMIT:
            self.failures.append(f"took {elapsed:.1f}s")
        status = "PASS" if not self.failures else "FAIL"
        detail = f"{self.checks} checks, {len(self.failures)} failures, {elapsed:.2f}s"
        if self.failures:
            detail += f"; first: {self.failures[0]}"
        RESULTS[self.number] = f"[{status}] criterion {self.number:>2}: {self.title} ({detail})"
        assert not self.failures, RESULTS[self.number]


def _arrows(lq):
    return sorted((a.source, a.target) for a in lq.quiver.arrows)


def test_criterion_01_localized_quiver_example():
    v = Verdict(1, "diamond localization at {x1,x3,x4}")
    q = catalog.diamond()
    X = ["x1", "x3", "x4"]
    sigma = parse_pathvector("a1.a2 + a3.a4", q)
    c = catalog.diamond_coalgebra()
    loc = localize_coalgebra(c, X)
    v.check(_arrows(loc.lquiver) == [("x1", "x3"), ("x3", "x4")], "arrows of the localized quiver of C")
    img = loc.reexpress(sigma)
    want = PathVector.from_path(loc.quiver.path(["bar_a3", "bar_a4"]))
    v.check(img == want, f"image of the generator in C is {img}")
    kq = localize_coalgebra(full_path_coalgebra(q, 2), X)
    v.check(_arrows(kq.lquiver) == [("x1", "x3"), ("x1", "x4"), ("x3", "x4")], "arrows of the localized quiver of KQ")
    beta = [a.id for a in kq.quiver.arrows if (a.source, a.target) == ("x1", "x4")]
    v.check(len(beta) == 1 and kq.lquiver.labels[beta[0]] == PathVector.from_path(q.path("a1.a2")),
            "the new arrow is labelled by the cell a1.a2")
    want_kq = PathVector({kq.quiver.path(beta): 1, kq.quiver.path(["bar_a3", "bar_a4"]): 1})
    v.check(kq.reexpress(sigma) == want_kq, f"image of the generator in KQ is {kq.reexpress(sigma)}")
    v.finish()


def test_criterion_02_split_examples():
    v = Verdict(2, "split idempotent examples")
    c = subcoalgebra_closure(catalog.chain3(), [], 2)
    cls = classify_idempotent(c, ["1", "3"])
    v.check(cls.split is True, "1->2->3 at {1,3} is split")
    loc = localize_coalgebra(c, ["1", "3"])
    ece = loc.coalgebra
    v.check(ece.keys() == [("1", "1"), ("3", "3")] and ece.dim == 2, "eCe is spanned by e_1 and e_3")
    reg = comodule_from_subspace(ece, ece.basis())
    v.check(length_vector(reg) == {"1": 1, "3": 1} and loewy_length(reg) == 1, "eCe is S_1 + S_3 as a comodule")
    d = classify_idempotent(catalog.diamond_coalgebra(), ["x1", "x3", "x4"])
    v.check(d.split is False, "diamond at {x1,x3,x4} is not split")
    v.finish()


def test_criterion_03_witness_family():
    v = Verdict(3, "parallel 2-path witness family, n = 3..8")
    for n in range(3, 9):
        c = catalog.parallel_coalgebra(n)
        w = criterion_witness(c, "x", "y", 2)
        v.check(w.size == n - 1, f"n={n}: witness size {w.size}")
        lq = localized_quiver(c, ["x", "y"])
        parallel = len(lq.arrows_between("x", "y"))
        v.check(parallel == n - 1, f"n={n}: {parallel} parallel arrows")
        flagged = bool(lq.parallel_families(at_least=3))
        v.check(flagged == (n >= 4), f"n={n}: triple-arrow flag is {flagged}")
        comp_flag = any((f.source, f.target) == ("x", "y") for f in tameness_diagnostic(c))
        v.check(comp_flag == (n >= 4), f"n={n}: component dimension flag is {comp_flag}")
    v.finish()


def test_criterion_04_eC_decomposition():
    v = Verdict(4, "eD = eDe + S_x^m for the n=4 example")
    d = catalog.parallel_coalgebra(4)
    X = ["x", "y"]
    loc = localize_coalgebra(d, X)
    m = tail_space(d, X, "x").dim
    ed, basis = comodule_of_eC(d, X, loc)
    v.check(validate(ed)[0], "eD is a valid eDe-comodule")

    # coordinates of a vector of eD on the returned basis (each basis row has its own pivot path)
    def coords(w: PathVector):
        out = {}
        for k, b in enumerate(basis):
            piv = min(b, key=d.quiver.path_key)
            if w.coefficient(piv):
                out[k] = w.coefficient(piv)
        rebuilt = PathVector()
        for k, c in out.items():
            rebuilt = rebuilt + basis[k] * c
        assert rebuilt == w
        return out

    tails = [coords(w) for w in tail_space(d, X, "x").basis()]
    inner = [{k: 1} for k, b in enumerate(basis) if b.endpoints()[1] in X]
    t_mod, _ = subcomodule(ed, tails)
    e_mod, _ = subcomodule(ed, inner)
    v.check(t_mod.dim == m == 4, f"tail part has dimension {t_mod.dim}, m = {m}")
    v.check(length_vector(t_mod) == {"x": m} and len(hom_simple(t_mod, "x")) == m, "tail part is S_x^m")
    v.check(e_mod.dim == loc.coalgebra.dim and e_mod.dim + t_mod.dim == ed.dim, "dimensions add up to eD")
    soc_ed = socle(ed)[1].get("x", 0)
    soc_ede = socle(comodule_from_subspace(loc.coalgebra, loc.coalgebra.basis()))[1].get("x", 0)
    v.check(soc_ed == soc_ede + m == 5, f"socle multiplicity of S_x: {soc_ed} = {soc_ede} + {m}")
    v.finish()


def test_criterion_05_duality_round_trip():
    v = Verdict(5, "relation duality round trip on 200 random quivers, L=6")
    rng = random.Random(SEED + 5)
    nonzero = 0
    for i in range(200):
        q = random_quiver(rng, 6, 10, min_vertices=3)
        gens = random_relations(rng, q, 6)
        ideal = truncated_ideal_span(q, gens, 6)
        nonzero += ideal.dim > 0
        c = coalgebra_of_relations(q, ideal)
        v.check(relations_of_coalgebra(c).same_span(ideal), f"instance {i}: ideal round trip")
        h = random_closure(rng, q, 6)
        v.check(coalgebra_of_relations(q, relations_of_coalgebra(h)) == h, f"instance {i}: coalgebra round trip")
    v.check(nonzero >= 100, f"only {nonzero} nonzero ideals")
    v.finish()


def _own_splits(p: Path, q):
    """(later, earlier) pairs built directly from the arrow tuple."""
    trace = [p.source] + [q.arrow(a).target for a in p.arrows]
    for k in range(p.length + 1):
        earlier = Path(trace[0], trace[k], p.arrows[:k])
        later = Path(trace[k], trace[-1], p.arrows[k:])
        yield later, earlier


def test_criterion_06_coalgebra_axioms():
    v = Verdict(6, "coassociativity and counit on 1000 random paths")
    rng = random.Random(SEED + 6)
    lengths = Counter()
    for i in range(1000):
        q = random_quiver(rng, 5, 8, acyclic=i % 2 == 0)
        p = random_path(rng, q, 8)
        lengths[p.length] += 1
        d = delta(q, p)
        v.check(dict(d.items()) == {pair: 1 for pair in _own_splits(p, q)}, f"delta of {p}")
        lhs, rhs = Counter(), Counter()
        for (l, r), c in d.items():
            for (ll, lr), c2 in delta(q, l).items():
                lhs[(ll, lr, r)] += c * c2
            for (rl, rr), c2 in delta(q, r).items():
                rhs[(l, rl, rr)] += c * c2
        v.check(lhs == rhs, f"coassociativity for {p}")
        left = PathVector({r: c * counit(PathVector.from_path(l)) for (l, r), c in d.items()})
        right = PathVector({l: c * counit(PathVector.from_path(r)) for (l, r), c in d.items()})
        v.check(left == right == PathVector.from_path(p), f"counit laws for {p}")
    v.check(max(lengths) == 8, "no path of length 8 was sampled")
    for i in range(100):
        c = random_closure(rng, random_quiver(rng, 5, 8), 4)
        v.check(is_subcoalgebra(c) and is_admissible(c), f"closure {i}")
    v.finish()


def test_criterion_07_decomposition_uniqueness():
    v = Verdict(7, "cell and tail decompositions on 50 random quivers")
    rng = random.Random(SEED + 7)
    for i in range(50):
        q = random_quiver(rng, 5, 7, acyclic=i % 3 != 0)
        X = random_subset(rng, q)
        for a in X:
            for p in q.paths_from(a, 6):
                if p.is_trivial:
                    continue
                if p.target in X:
                    cells = cellular_decomposition(q, p, X)
                    joined = tuple(x for c in cells for x in c.arrows)
                    v.check(joined == p.arrows, f"cells of {p} concatenate")
                    v.check(brute_cells(q, p, X) == [[c.arrows for c in cells]], f"cells of {p} vs oracle")
                else:
                    cells, tail = tail_decomposition(q, p, X)
                    joined = tuple(x for c in cells for x in c.arrows) + tail.arrows
                    v.check(joined == p.arrows, f"tail decomposition of {p} concatenates")
                    v.check(brute_tail(q, p, X) == [([c.arrows for c in cells], tail.arrows)],
                            f"tail decomposition of {p} vs oracle")
    v.check(v.checks > 500, f"only {v.checks} checks")
    v.finish()


def test_criterion_08_length_functoriality():
    v = Verdict(8, "length vector of eM on 100 random comodules")
    rng = random.Random(SEED + 8)
    for i in range(100):
        q = random_quiver(rng, 5, 7, min_vertices=3)
        c = random_closure(rng, q, 3) if i % 4 else full_path_coalgebra(q, 3)
        m = random_comodule(rng, c, max_dim=8)
        X = random_subset(rng, q)
        v.check(m.dim <= 8 and validate(m)[0], f"instance {i}: valid comodule of dim <= 8")
        lm = length_vector(m)
        v.check(dict(lm) == length_by_weights(m), f"instance {i}: length vector vs weight oracle")
        em = quotient_functor(m, X)
        lem = length_vector(em)
        v.check(lem == lm.restrict(X), f"instance {i}: {dict(lem)} vs {dict(lm.restrict(X))}")
        v.check(lem.total <= lm.total, f"instance {i}: length inequality")
    v.finish()


def test_criterion_09_section_then_quotient():
    v = Verdict(9, "quotient of the cotensor section recovers N, 50 instances")
    rng = random.Random(SEED + 9)
    done = 0
    while done < 50:
        q = random_quiver(rng, 4, 6, min_vertices=3)
        c = random_closure(rng, q, 3, max_generators=2)
        X = random_subset(rng, q)
        loc = localize_coalgebra(c, X)
        n = comodule_from_subspace(loc.coalgebra, [random_element(rng, loc.coalgebra)
                                                   for _ in range(rng.randint(1, 2))])
        if n.dim > 6:
            continue
        n = random_basis_change(rng, n)
        done += 1
        s = cotensor_section(n, c, X, loc)
        back = quotient_functor(s, X, loc)
        v.check(validate(s)[0], f"instance {done}: section is a valid comodule")
        v.check(length_vector(back) == length_vector(n), f"instance {done}: length vectors")
        for x in loc.X:
            v.check(len(hom_simple(back, x)) == len(hom_simple(n, x)), f"instance {done}: hom from S_{x}")
    v.finish()


def test_criterion_10_semicentral_implies_split():
    v = Verdict(10, "semicentral implies split on 500 random instances")
    rng = random.Random(SEED + 10)
    semicentral = 0
    for i in range(500):
        q = random_quiver(rng, 5, 7, acyclic=i % 5 != 0)
        c = random_closure(rng, q, 3) if i % 3 else full_path_coalgebra(q, 3)
        X = random_subset(rng, q)
        cls = classify_idempotent(c, X)
        if cls.left_semicentral or cls.right_semicentral:
            semicentral += 1
            v.check(cls.split, f"instance {i}: X={X} semicentral but not split")
    v.check(semicentral >= 100, f"only {semicentral} semicentral instances")
    v.finish()


if __name__ == "__main__":
    tests = [f for name, f in sorted(globals().items()) if name.startswith("test_criterion_")]
    bad = 0
    for f in tests:
        try:
            f()
        except AssertionError:
            bad += 1
    for k in sorted(RESULTS):
        print(RESULTS[k])
    sys.exit(1 if bad else 0)
