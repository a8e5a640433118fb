"""Small named quivers and coalgebras used by the fixtures, the self-test and the docs."""

from __future__ import annotations

from .coalgebra import GradedSubcoalgebra, subcoalgebra_closure
from .linalg import PathVector
from .quiver import Path, Quiver


def diamond() -> Quiver:
    """x1 -a1-> x2 -a2-> x4 and x1 -a3-> x3 -a4-> x4."""
    return Quiver(
        ("x1", "x2", "x3", "x4"),
        (("a1", "x1", "x2"), ("a2", "x2", "x4"), ("a3", "x1", "x3"), ("a4", "x3", "x4")),
    )


def diamond_coalgebra(maxlen: int = 2) -> GradedSubcoalgebra:
    q = diamond()
    gen = PathVector({q.path("a1.a2"): 1, q.path("a3.a4"): 1})
    return subcoalgebra_closure(q, [gen], maxlen, admissible=True)


def star(n: int) -> Quiver:
    """n arrows a1..an out of x, each to its own sink y1..yn."""
    return Quiver(("x",) + tuple(f"y{i}" for i in range(1, n + 1)),
                  tuple((f"a{i}", "x", f"y{i}") for i in range(1, n + 1)))


def chain3() -> Quiver:
    """1 -a-> 2 -b-> 3."""
    return Quiver(("1", "2", "3"), (("a", "1", "2"), ("b", "2", "3")))


def parallel_two_paths(n: int) -> Quiver:
    """x -a_i-> m_i -b_i-> y for i = 1..n, so that gamma_i = b_i a_i."""
    mids = tuple(f"m{i}" for i in range(1, n + 1))
    arrows = []
    for i in range(1, n + 1):
        arrows.append((f"a{i}", "x", f"m{i}"))
        arrows.append((f"b{i}", f"m{i}", "y"))
    return Quiver(("x",) + mids + ("y",), tuple(arrows))


def gamma(q: Quiver, i: int) -> Path:
    return q.path((f"a{i}", f"b{i}"))


def parallel_differences(n: int) -> list[PathVector]:
    """The generators gamma_i - gamma_{i+1}, i = 1..n-1."""
    q = parallel_two_paths(n)
    return [PathVector({gamma(q, i): 1, gamma(q, i + 1): -1}) for i in range(1, n)]


def parallel_coalgebra(n: int, maxlen: int = 2) -> GradedSubcoalgebra:
    return subcoalgebra_closure(parallel_two_paths(n), parallel_differences(n), maxlen, admissible=True)


def ladder(k: int) -> Quiver:
    """The infinite ladder cut after k squares.

    Top row t0 -> t1 -> ... -> tk, rungs t_i -> b_i (i >= 1), bottom row b_{i+1} -> b_i.
    """
    vs = tuple(f"t{i}" for i in range(k + 1)) + tuple(f"b{i}" for i in range(k + 1))
    arrows = [(f"u{i}", f"t{i}", f"t{i + 1}") for i in range(k)]
    arrows += [(f"r{i}", f"t{i}", f"b{i}") for i in range(1, k + 1)]
    arrows += [(f"d{i}", f"b{i + 1}", f"b{i}") for i in range(k)]
    return Quiver(vs, tuple(arrows))
