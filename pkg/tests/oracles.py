"""Independent reference computations used by the tests.

None of these reuse the package's decomposition or linear-algebra code paths.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def trace(q, p):
    out = [p.source]
    for a in p.arrows:
        out.append(q.arrow(a).target)
    return out


def all_factorizations(p):
    """Every way of cutting the arrow sequence into nonempty consecutive pieces."""
    n = p.length
    for k in range(n):
        for cuts in combinations(range(1, n), k):
            bounds = (0,) + cuts + (n,)
            yield [p.arrows[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1)]


def brute_cells(q, p, X):
    """All factorizations of p whose pieces are cells; a correct decomposition is the unique one."""
    X = set(X)
    found = []
    for pieces in all_factorizations(p):
        ok = True
        for arrows in pieces:
            verts = [q.arrow(arrows[0]).source] + [q.arrow(a).target for a in arrows]
            if verts[0] not in X or verts[-1] not in X or any(v in X for v in verts[1:-1]):
                ok = False
                break
        if ok:
            found.append([tuple(a) for a in pieces])
    return found


def brute_tail(q, p, X):
    """All factorizations into cells followed by one final piece that is a tail."""
    X = set(X)
    found = []
    for pieces in all_factorizations(p):
        *cells, last = pieces
        good = True
        for arrows in cells:
            verts = [q.arrow(arrows[0]).source] + [q.arrow(a).target for a in arrows]
            if verts[0] not in X or verts[-1] not in X or any(v in X for v in verts[1:-1]):
                good = False
                break
        verts = [q.arrow(last[0]).source] + [q.arrow(a).target for a in last]
        if good and verts[0] in X and not any(v in X for v in verts[1:]):
            found.append(([tuple(a) for a in cells], tuple(last)))
    return found


def rank(rows):
    """Rank of a list of dict-rows by plain Gaussian elimination on a dense copy."""
    cols = sorted({k for r in rows for k in r}, key=repr)
    m = [[Fraction(r.get(c, 0)) for c in cols] for r in rows]
    rk = 0
    for j in range(len(cols)):
        piv = next((i for i in range(rk, len(m)) if m[i][j]), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][j]:
                f = m[i][j] / m[rk][j]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
    return rk


def weight_multiplicity(m, x):
    """Multiplicity of S_x in a comodule: rank of the idempotent attached to x.

    The idempotent acts by v -> (counit-free) coefficient of e_x in rho(v);
    its rank counts composition factors at x without any socle computation.
    """
    from quivercoalg.quiver import Path

    ex = Path.trivial(x)
    rows = []
    for i in range(m.dim):
        row = {}
        for j in range(m.dim):
            c = m.coaction.get((i, j))
            if c is not None:
                v = c.coefficient(ex)
                if v:
                    row[j] = v
        rows.append(row)
    return rank(rows)


def length_by_weights(m):
    return {x: n for x in m.quiver.vertices if (n := weight_multiplicity(m, x))}
