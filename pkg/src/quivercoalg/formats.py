"""Text formats for quivers, coalgebras, relation sets and comodules.

All formats are line based; ``#`` starts a comment.  Errors are raised as
:class:`ParseError` with 1-based line and column.

Quiver::

    vertex x1
    arrow a1 x1 x2

Coalgebra file: a quiver block plus ``generator <vector>``, ``admissible true|false``
and ``maxlen L`` lines.  Relations file: ``relation <vector>`` lines and an
optional ``maxlen L``; it may carry its own quiver block.  Comodule file::

    dim 2
    rho 0 : 0 e_x1 ; 1 a1
    rho 1 : 1 e_x2
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .coalgebra import GradedSubcoalgebra, subcoalgebra_closure
from .comodules import FinComodule
from .errors import ContractError, ParseError
from .linalg import PathVector, parse_pathvector
from .quiver import Arrow, Quiver

_WORD = re.compile(r"\S+")


def _lines(text: str):
    """Yield (line number, content without comment, words with columns)."""
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        words = [(m.group(), m.start() + 1) for m in _WORD.finditer(body)]
        if words:
            yield n, body, words


@dataclass
class _QuiverBuilder:
    source: str | None
    vertices: list[str] = field(default_factory=list)
    arrows: list[Arrow] = field(default_factory=list)

    def feed(self, n: int, words) -> bool:
        kw = words[0][0]
        if kw == "vertex":
            if len(words) != 2:
                raise ParseError("expected 'vertex <id>'", n, words[0][1], self.source)
            vid, col = words[1]
            if vid in self.vertices:
                raise ParseError(f"duplicate vertex id {vid!r}", n, col, self.source)
            self.vertices.append(vid)
            return True
        if kw == "arrow":
            if len(words) != 4:
                raise ParseError("expected 'arrow <id> <source> <target>'", n, words[0][1], self.source)
            (aid, acol), (s, scol), (t, tcol) = words[1:]
            if any(a.id == aid for a in self.arrows):
                raise ParseError(f"duplicate arrow id {aid!r}", n, acol, self.source)
            if aid.startswith("e_") or "." in aid:
                raise ParseError(f"invalid arrow id {aid!r}", n, acol, self.source)
            for v, c in ((s, scol), (t, tcol)):
                if v not in self.vertices:
                    raise ParseError(f"unknown vertex {v!r}", n, c, self.source)
            self.arrows.append(Arrow(aid, s, t))
            return True
        return False

    def build(self) -> Quiver:
        if not self.vertices:
            raise ParseError("no vertices declared", 1, 1, self.source)
        return Quiver(tuple(self.vertices), tuple(self.arrows))


def _quiver_from_json(text: str, source: str | None) -> Quiver:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno, source) from None
    try:
        vertices = tuple(str(v) for v in data["vertices"])
        arrows = []
        for a in data.get("arrows", []):
            if isinstance(a, dict):
                arrows.append(Arrow(str(a["id"]), str(a["source"]), str(a["target"])))
            else:
                aid, s, t = a
                arrows.append(Arrow(str(aid), str(s), str(t)))
        return Quiver(vertices, tuple(arrows))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"invalid quiver JSON: {e}", 1, 1, source) from None


def parse_quiver(text: str, source: str | None = None) -> Quiver:
    if text.lstrip().startswith("{"):
        return _quiver_from_json(text, source)
    qb = _QuiverBuilder(source)
    for n, _, words in _lines(text):
        if not qb.feed(n, words):
            raise ParseError(f"unknown keyword {words[0][0]!r}", n, words[0][1], source)
    return qb.build()


def _vector_after(body: str, words, n: int, quiver: Quiver, source) -> PathVector:
    if len(words) < 2:
        raise ParseError(f"'{words[0][0]}' needs a vector", n, words[0][1], source)
    start = words[1][1] - 1
    try:
        return parse_pathvector(body[start:], quiver, line=n, column_offset=start)
    except ParseError as e:
        raise ParseError(e.message, e.line, e.column, source) from None


def _int_arg(words, n: int, source, minimum: int = 0) -> int:
    if len(words) != 2:
        raise ParseError(f"expected '{words[0][0]} <integer>'", n, words[0][1], source)
    text, col = words[1]
    if not text.isdigit() or int(text) < minimum:
        raise ParseError(f"expected an integer >= {minimum}, got {text!r}", n, col, source)
    return int(text)


@dataclass
class CoalgebraSpec:
    quiver: Quiver
    generators: list[PathVector]
    admissible: bool
    maxlen: int | None

    def build(self, maxlen: int | None = None) -> GradedSubcoalgebra:
        L = maxlen if maxlen is not None else self.maxlen
        if L is None:
            L = max([1] + [p.length for g in self.generators for p in g])
        return subcoalgebra_closure(self.quiver, self.generators, L, admissible=self.admissible)


def _split_quiver(text: str, source):
    qb = _QuiverBuilder(source)
    rest = []
    for n, body, words in _lines(text):
        if not qb.feed(n, words):
            rest.append((n, body, words))
    return qb.build(), rest


def parse_coalgebra(text: str, source: str | None = None) -> CoalgebraSpec:
    quiver, rest = _split_quiver(text, source)
    gens, admissible, maxlen = [], True, None
    for n, body, words in rest:
        kw, col = words[0]
        if kw == "generator":
            gens.append(_vector_after(body, words, n, quiver, source))
        elif kw == "admissible":
            if len(words) != 2 or words[1][0] not in ("true", "false"):
                raise ParseError("expected 'admissible true|false'", n, col, source)
            admissible = words[1][0] == "true"
        elif kw == "maxlen":
            maxlen = _int_arg(words, n, source)
        else:
            raise ParseError(f"unknown keyword {kw!r}", n, col, source)
    return CoalgebraSpec(quiver, gens, admissible, maxlen)


@dataclass
class RelationsSpec:
    quiver: Quiver
    relations: list[PathVector]
    maxlen: int | None


def parse_relations(text: str, quiver: Quiver | None = None, source: str | None = None) -> RelationsSpec:
    """Relations file; uses its own quiver block when present, else ``quiver``."""
    qb = _QuiverBuilder(source)
    rest = []
    for n, body, words in _lines(text):
        if not qb.feed(n, words):
            rest.append((n, body, words))
    if qb.vertices:
        own = qb.build()
        if quiver is not None and own != quiver:
            raise ParseError("relations file declares a different quiver", 1, 1, source)
        quiver = own
    if quiver is None:
        raise ParseError("relations file has no quiver block and none was given", 1, 1, source)
    rels, maxlen = [], None
    for n, body, words in rest:
        kw, col = words[0]
        if kw == "relation":
            rels.append(_vector_after(body, words, n, quiver, source))
        elif kw == "maxlen":
            maxlen = _int_arg(words, n, source)
        else:
            raise ParseError(f"unknown keyword {kw!r}", n, col, source)
    return RelationsSpec(quiver, rels, maxlen)


def parse_comodule(text: str, coalgebra: GradedSubcoalgebra, source: str | None = None) -> FinComodule:
    quiver = coalgebra.quiver
    dim = None
    table: dict[tuple[int, int], PathVector] = {}
    for n, body, words in _lines(text):
        kw, col = words[0]
        if kw == "dim":
            if dim is not None:
                raise ParseError("dimension declared twice", n, col, source)
            dim = _int_arg(words, n, source)
            continue
        if kw != "rho":
            raise ParseError(f"unknown keyword {kw!r}", n, col, source)
        if dim is None:
            raise ParseError("'dim' must come before 'rho' lines", n, col, source)
        m = re.match(r"rho\s+(\d+)\s*:", body[col - 1:])
        if not m:
            raise ParseError("expected 'rho <i> : <j> <vector>; ...'", n, col, source)
        i = int(m.group(1))
        if i >= dim:
            raise ParseError(f"basis index {i} out of range", n, col + m.start(1), source)
        pos = col - 1 + m.end()
        for chunk in body[pos:].split(";"):
            start = pos
            pos += len(chunk) + 1
            if not chunk.strip():
                continue
            cm = re.match(r"\s*(\d+)\s+", chunk)
            if not cm:
                raise ParseError("expected '<j> <vector>'", n, start + 1, source)
            j = int(cm.group(1))
            if j >= dim:
                raise ParseError(f"basis index {j} out of range", n, start + cm.start(1) + 1, source)
            vstart = start + cm.end()
            try:
                v = parse_pathvector(chunk[cm.end():], quiver, line=n, column_offset=vstart)
            except ParseError as e:
                raise ParseError(e.message, e.line, e.column, source) from None
            table[(i, j)] = table.get((i, j), PathVector()) + v
    if dim is None:
        raise ParseError("missing 'dim' line", 1, 1, source)
    try:
        return FinComodule(coalgebra, dim, table)
    except ContractError as e:
        raise ParseError(str(e), 1, 1, source) from None


# -- writers -----------------------------------------------------------------


def quiver_to_text(q: Quiver) -> str:
    lines = [f"vertex {v}" for v in q.vertices]
    lines += [f"arrow {a.id} {a.source} {a.target}" for a in q.arrows]
    return "\n".join(lines) + "\n"


def quiver_to_json(q: Quiver) -> dict:
    return {"vertices": list(q.vertices),
            "arrows": [{"id": a.id, "source": a.source, "target": a.target} for a in q.arrows]}


def coalgebra_to_text(c: GradedSubcoalgebra) -> str:
    """A coalgebra file whose generators are the stored RREF basis."""
    lines = [quiver_to_text(c.quiver).rstrip("\n")]
    lines += [f"generator {v.format(c.quiver)}" for v in c.basis()]
    lines.append(f"admissible {'true' if c.admissible else 'false'}")
    lines.append(f"maxlen {c.maxlen}")
    return "\n".join(lines) + "\n"


def relations_to_text(quiver: Quiver, relations, maxlen: int | None = None, with_quiver: bool = True) -> str:
    lines = [quiver_to_text(quiver).rstrip("\n")] if with_quiver else []
    lines += [f"relation {v.format(quiver)}" for v in relations]
    if maxlen is not None:
        lines.append(f"maxlen {maxlen}")
    return "\n".join(lines) + "\n"


def comodule_to_text(m: FinComodule) -> str:
    lines = [f"dim {m.dim}"]
    for i in range(m.dim):
        entries = [f"{j} {m.coaction[(i, j)].format(m.quiver)}" for j in range(m.dim) if (i, j) in m.coaction]
        if entries:
            lines.append(f"rho {i} : " + " ; ".join(entries))
    return "\n".join(lines) + "\n"
