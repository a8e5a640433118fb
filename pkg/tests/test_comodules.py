from __future__ import annotations

import random

import pytest

from quivercoalg import catalog
from quivercoalg.coalgebra import full_path_coalgebra, subcoalgebra_closure
from quivercoalg.comodules import (
    FinComodule,
    LengthVector,
    comodule_from_subspace,
    comodule_of_eC,
    cotensor_section,
    direct_sum,
    hom_simple,
    length_vector,
    loewy_length,
    quotient_comodule,
    quotient_functor,
    simple,
    socle,
    socle_filtration,
    subcomodule,
    validate,
)
from quivercoalg.errors import DimensionOverflow
from quivercoalg.generators import random_closure, random_comodule, random_quiver, random_subset
from quivercoalg.linalg import PathVector, parse_pathvector
from quivercoalg.localization import localize_coalgebra, tail_space
from quivercoalg.quiver import Path

from oracles import length_by_weights


@pytest.fixture
def dc():
    return catalog.diamond_coalgebra()


def test_simple_is_valid(dc):
    assert validate(simple(dc, "x1"))[0]
    bad = FinComodule(dc, 1, {(0, 0): PathVector.from_path(Path.trivial("x1"), 2)})
    ok, diags = validate(bad)
    assert not ok and diags[0].axiom == "counit" and diags[0].index == (0, 0)


def test_coassociativity_failure_detected(dc):
    q = dc.quiver
    # counit law holds but a1 has no partner leg
    m = FinComodule(dc, 2, {(0, 0): parse_pathvector("e_x1", q), (1, 1): parse_pathvector("e_x2", q),
                            (0, 1): parse_pathvector("a1.a2 + a3.a4", q)})
    ok, diags = validate(m)
    assert not ok and {d.axiom for d in diags} == {"coassociativity"}


def test_hom_simple(dc):
    s = simple(dc, "x1")
    assert len(hom_simple(s, "x1")) == 1
    assert len(hom_simple(s, "x2")) == 0


def test_hom_simple_star():
    c = full_path_coalgebra(catalog.star(5), 1)
    m, basis = comodule_of_eC(c, ["x"])
    assert validate(m)[0]
    # the five tails and the trivial path e_x all satisfy rho(v) = v ⊗ e_x
    assert len(hom_simple(m, "x")) == tail_space(c, ["x"], "x").dim + 1 == 6
    assert socle(m)[1]["x"] >= 5


def test_length_vectors(dc):
    assert length_vector(simple(dc, "x3")) == {"x3": 1}
    hull = comodule_from_subspace(dc, [parse_pathvector("a1.a2 + a3.a4", dc.quiver)])
    assert hull.dim == 4
    assert length_vector(hull) == {"x1": 1, "x2": 1, "x3": 1, "x4": 1}
    assert loewy_length(hull) == 3
    sub, lv = socle(hull)
    assert lv == {"x4": 1} and sub.dim == 1


def test_direct_sum_additive(dc):
    a = comodule_from_subspace(dc, [parse_pathvector("a1.a2 + a3.a4", dc.quiver)])
    b = simple(dc, "x2")
    assert length_vector(direct_sum(a, b)) == length_vector(a) + length_vector(b)


def test_length_vector_matches_weights():
    rng = random.Random(3)
    for _ in range(40):
        c = random_closure(rng, random_quiver(rng, 4, 6), 3)
        m = random_comodule(rng, c)
        assert validate(m)[0]
        assert dict(length_vector(m)) == length_by_weights(m)
        # hom from S_x is the x-part of the socle
        lv = socle_filtration(m)[0].multiplicities
        assert all(len(hom_simple(m, x)) == lv.get(x, 0) for x in c.quiver.vertices)


def test_quotient_functor_simple(dc):
    X = ["x1", "x3", "x4"]
    loc = localize_coalgebra(dc, X)
    e1 = quotient_functor(simple(dc, "x1"), X, loc)
    assert e1.dim == 1 and length_vector(e1) == {"x1": 1} and validate(e1)[0]
    assert quotient_functor(simple(dc, "x2"), X, loc).dim == 0


def test_quotient_functor_full_set(dc):
    hull = comodule_from_subspace(dc, [parse_pathvector("a1.a2 + a3.a4", dc.quiver)])
    e = quotient_functor(hull, dc.quiver.vertices)
    assert e.dim == hull.dim and length_vector(e) == length_vector(hull) and validate(e)[0]


def test_quotient_functor_restricts_length(dc):
    rng = random.Random(8)
    X = ["x1", "x3", "x4"]
    loc = localize_coalgebra(dc, X)
    for _ in range(30):
        m = random_comodule(rng, dc)
        e = quotient_functor(m, X, loc)
        assert validate(e)[0]
        assert length_vector(e) == length_vector(m).restrict(X)


def test_exactness():
    rng = random.Random(21)
    for _ in range(30):
        c = random_closure(rng, random_quiver(rng, 4, 6), 3)
        m = random_comodule(rng, c)
        X = random_subset(rng, c.quiver)
        w = socle_filtration(m)[0].space.rows.values()
        sub, _ = subcomodule(m, w)
        quot = quotient_comodule(m, w)
        assert validate(sub)[0] and validate(quot)[0]
        dim = lambda n: quotient_functor(n, X).dim
        assert dim(quot) == dim(m) - dim(sub)


def test_section_left_semicentral():
    c = subcoalgebra_closure(catalog.chain3(), [], 2)
    X = ["1", "2"]
    loc = localize_coalgebra(c, X)
    for x in X:
        s = cotensor_section(simple(loc.coalgebra, x), c, X, loc)
        assert s.dim == 1 and length_vector(s) == {x: 1}
    n = comodule_from_subspace(loc.coalgebra, loc.coalgebra.basis())
    s = cotensor_section(n, c, X, loc)
    assert validate(s)[0]
    assert length_vector(s) == length_vector(n)


def test_section_round_trip_parallel():
    d = catalog.parallel_coalgebra(4)
    X = ["x", "y"]
    loc = localize_coalgebra(d, X)
    n = comodule_from_subspace(loc.coalgebra, loc.coalgebra.basis())
    s = cotensor_section(n, d, X, loc)
    assert validate(s)[0]
    back = quotient_functor(s, X, loc)
    assert length_vector(back) == length_vector(n)
    assert all(len(hom_simple(back, x)) == len(hom_simple(n, x)) for x in X)


def test_section_direct_sum_and_cap():
    d = catalog.diamond_coalgebra()
    X = ["x1", "x3", "x4"]
    loc = localize_coalgebra(d, X)
    a, b = simple(loc.coalgebra, "x1"), simple(loc.coalgebra, "x4")
    sa, sb = cotensor_section(a, d, X, loc), cotensor_section(b, d, X, loc)
    assert cotensor_section(direct_sum(a, b), d, X, loc).dim == sa.dim + sb.dim
    with pytest.raises(DimensionOverflow):
        cotensor_section(a, d, X, loc, cap=1)


def test_eC_decomposition_parallel():
    d = catalog.parallel_coalgebra(4)
    X = ["x", "y"]
    loc = localize_coalgebra(d, X)
    m, basis = comodule_of_eC(d, X, loc)
    assert validate(m)[0]
    tails = tail_space(d, X, "x").dim
    assert tails == 4
    ede = loc.coalgebra
    ede_socle = socle(comodule_from_subspace(ede, ede.basis()))[1]
    assert socle(m)[1]["x"] == ede_socle["x"] + tails == 5
    assert m.dim == ede.dim + tails


def test_eC_full_set_is_regular():
    c = catalog.diamond_coalgebra()
    m, _ = comodule_of_eC(c, c.quiver.vertices)
    reg = comodule_from_subspace(c, c.basis())
    assert m.dim == reg.dim == c.dim
    assert length_vector(m) == length_vector(reg)


def test_length_vector_type():
    lv = LengthVector({"a": 2, "b": 0})
    assert lv == {"a": 2} and lv.total == 2
    assert (lv + {"b": 1}).total == 3
