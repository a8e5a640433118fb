"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (the message names the module
whose contract was violated), 2 on a parse error or bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FsPath

from . import __version__
from .coalgebra import (
    GradedSubcoalgebra,
    delta_elem,
    full_path_coalgebra,
    is_admissible,
    is_subcoalgebra,
    subcoalgebra_closure,
    tameness_diagnostic,
)
from .comodules import (
    DEFAULT_CAP,
    cotensor_section,
    hom_simple,
    length_vector,
    quotient_functor,
    socle_filtration,
    validate,
)
from .errors import ContractError, ParseError, QuiverCoalgError
from .formats import (
    CoalgebraSpec,
    coalgebra_to_text,
    comodule_to_text,
    parse_coalgebra,
    parse_comodule,
    parse_quiver,
    parse_relations,
    relations_to_text,
)
from .linalg import parse_pathvector
from .localization import classify_idempotent, localize_coalgebra, tail_space
from .quiver import Quiver, enumerate_all_cells, enumerate_cells, enumerate_paths, enumerate_tails
from .relations import (
    coalgebra_of_relations,
    criterion_witness,
    relations_of_coalgebra,
    truncated_ideal_span,
)


class UsageError(Exception):
    pass


# -- loading -----------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return FsPath(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", 0, 0, path) from None


def _quiver(args) -> Quiver:
    if getattr(args, "quiver", None):
        return parse_quiver(_read(args.quiver), args.quiver)
    if getattr(args, "coalgebra", None):
        return parse_coalgebra(_read(args.coalgebra), args.coalgebra).quiver
    raise UsageError("a --quiver or --coalgebra file is required")


def _coalgebra_spec(args) -> CoalgebraSpec:
    return parse_coalgebra(_read(args.coalgebra), args.coalgebra)


def _coalgebra(args) -> GradedSubcoalgebra:
    """The coalgebra from --coalgebra, or KQ from --quiver (both truncated at --maxlen)."""
    if getattr(args, "coalgebra", None):
        return _coalgebra_spec(args).build(args.maxlen)
    if getattr(args, "quiver", None):
        if args.maxlen is None:
            raise UsageError("--maxlen is required with --quiver")
        return full_path_coalgebra(_quiver(args), args.maxlen)
    raise UsageError("a --coalgebra or --quiver file is required")


def _vertices(q: Quiver, text: str | None) -> list[str]:
    if not text:
        raise UsageError("--vertices is required")
    vs = [v.strip() for v in text.split(",") if v.strip()]
    return q.sort_vertices(q.check_vertices(vs))


def _vector(q: Quiver, text: str, what: str):
    try:
        return parse_pathvector(text, q, line=1)
    except ParseError as e:
        raise ParseError(e.message, e.line, e.column, what) from None


# -- report helpers ----------------------------------------------------------


def coalgebra_report(c: GradedSubcoalgebra) -> dict:
    return {
        "maxlen": c.maxlen,
        "dim": c.dim,
        "components": [
            {"source": a, "target": b, "dim": s.dim, "basis": [v.format(c.quiver) for v in s.basis()]}
            for (a, b), s in c.items()
        ],
    }


def ideal_report(ideal) -> dict:
    q = ideal.quiver
    return {
        "maxlen": ideal.maxlen,
        "dim": ideal.dim,
        "components": [
            {"source": a, "target": b, "dim": ideal.spans[(a, b)].dim,
             "basis": [v.format(q) for v in ideal.spans[(a, b)].basis()]}
            for a, b in ideal.keys()
        ],
    }


def _lv(lv) -> dict:
    return {k: lv[k] for k in sorted(lv)}


# -- commands ----------------------------------------------------------------


def cmd_paths(args) -> dict:
    q = _quiver(args)
    L = args.maxlen
    q.check_vertices([args.source] + ([args.target] if args.target else []))
    if args.target:
        ps = enumerate_paths(q, args.source, args.target, L)
    else:
        ps = list(q.paths_from(args.source, L))
    return {"source": args.source, "target": args.target, "maxlen": L, "count": len(ps),
            "paths": [str(p) for p in ps]}


def cmd_cells(args) -> dict:
    q = _quiver(args)
    X = _vertices(q, args.vertices)
    if args.source and args.target:
        cells = enumerate_cells(q, X, args.source, args.target, args.maxlen)
    else:
        cells = enumerate_all_cells(q, X, args.maxlen)
    return {"X": X, "maxlen": args.maxlen, "count": len(cells),
            "cells": [{"path": str(p), "source": p.source, "target": p.target} for p in cells]}


def cmd_tails(args) -> dict:
    q = _quiver(args)
    X = _vertices(q, args.vertices)
    tails = enumerate_tails(q, X, args.source, args.maxlen)
    out = {"X": X, "source": args.source, "maxlen": args.maxlen, "count": len(tails),
           "tails": [str(p) for p in tails]}
    if args.coalgebra:
        c = _coalgebra(args)
        out["tail_space_dim"] = tail_space(c, X, args.source, args.maxlen).dim
    return out


def cmd_delta(args) -> dict:
    q = _quiver(args)
    v = _vector(q, args.element, "--element")
    d = delta_elem(q, v)
    return {"element": v.format(q), "delta": d.format(q), "delta_algebraic": d.format(q, algebraic=True),
            "terms": len(d)}


def cmd_closure(args) -> dict:
    if args.coalgebra:
        parsed = _coalgebra_spec(args)
        q, gens, admissible = parsed.quiver, list(parsed.generators), parsed.admissible
        L = args.maxlen if args.maxlen is not None else parsed.maxlen
    else:
        q, gens, admissible, L = _quiver(args), [], True, args.maxlen
    gens += [_vector(q, g, "--generator") for g in args.generator or []]
    if args.no_admissible:
        admissible = False
    if L is None:
        L = max([1] + [p.length for g in gens for p in g])
    c = subcoalgebra_closure(q, gens, L, admissible=admissible)
    out = coalgebra_report(c)
    out["admissible"] = is_admissible(c)
    out["is_subcoalgebra"] = is_subcoalgebra(c)
    if args.emit_coalgebra:
        FsPath(args.emit_coalgebra).write_text(coalgebra_to_text(c), encoding="utf-8")
    return out


def cmd_localize(args) -> dict:
    c = _coalgebra(args)
    X = _vertices(c.quiver, args.vertices)
    loc = localize_coalgebra(c, X)
    lq = loc.lquiver
    out = {
        "X": list(loc.X),
        "maxlen": c.maxlen,
        "localized_quiver": {
            "vertices": list(lq.quiver.vertices),
            "arrows": [
                {"id": a.id, "source": a.source, "target": a.target,
                 "label": lq.labels[a.id].format(c.quiver),
                 "label_algebraic": lq.labels[a.id].format(c.quiver, algebraic=True)}
                for a in lq.quiver.arrows
            ],
        },
        "parallel_families": [{"source": x, "target": y, "arrows": n} for x, y, n in lq.parallel_families()],
        "localized_coalgebra": coalgebra_report(loc.coalgebra),
        "tameness_flags": [f.message for f in tameness_diagnostic(loc.coalgebra)],
        "tail_dimensions": {x: tail_space(c, X, x).dim for x in loc.X},
    }
    if args.reexpress:
        v = _vector(c.quiver, args.reexpress, "--reexpress")
        img = loc.reexpress(v)
        out["reexpressed"] = {"element": v.format(c.quiver), "image": img.format(lq.quiver),
                              "image_algebraic": img.format(lq.quiver, algebraic=True)}
    if args.classify:
        out["classification"] = classify_idempotent(c, X).to_dict()
    return out


def cmd_classify(args) -> dict:
    c = _coalgebra(args)
    X = _vertices(c.quiver, args.vertices)
    return classify_idempotent(c, X, args.maxlen).to_dict()


def cmd_dualize(args) -> dict:
    if args.relations:
        q = parse_quiver(_read(args.quiver), args.quiver) if args.quiver else None
        parsed = parse_relations(_read(args.relations), q, args.relations)
        L = args.maxlen if args.maxlen is not None else parsed.maxlen
        if L is None:
            raise UsageError("--maxlen is required")
        ideal = truncated_ideal_span(parsed.quiver, parsed.relations, L)
        c = coalgebra_of_relations(parsed.quiver, ideal)
        if args.emit_coalgebra:
            FsPath(args.emit_coalgebra).write_text(coalgebra_to_text(c), encoding="utf-8")
        return {"direction": "relations->coalgebra", "ideal": ideal_report(ideal), "coalgebra": coalgebra_report(c)}
    if args.coalgebra:
        c = _coalgebra(args)
        ideal = relations_of_coalgebra(c, strict=args.strict)
        if args.emit_relations:
            FsPath(args.emit_relations).write_text(relations_to_text(c.quiver, ideal.basis(), ideal.maxlen),
                                                   encoding="utf-8")
        return {"direction": "coalgebra->relations", "coalgebra": coalgebra_report(c), "ideal": ideal_report(ideal),
                "violations": ideal.violations}
    raise UsageError("dualize needs --relations or --coalgebra")


def cmd_roundtrip(args) -> dict:
    out = {}
    if args.relations:
        q = parse_quiver(_read(args.quiver), args.quiver) if args.quiver else None
        parsed = parse_relations(_read(args.relations), q, args.relations)
        L = args.maxlen if args.maxlen is not None else parsed.maxlen
        if L is None:
            raise UsageError("--maxlen is required")
        ideal = truncated_ideal_span(parsed.quiver, parsed.relations, L)
        c = coalgebra_of_relations(parsed.quiver, ideal)
        back = relations_of_coalgebra(c)
        out["ideal_round_trip"] = back.same_span(ideal)
        out["ideal_dim"] = ideal.dim
        out["coalgebra_dim"] = c.dim
    if args.coalgebra:
        c = _coalgebra(args)
        again = coalgebra_of_relations(c.quiver, relations_of_coalgebra(c))
        out["coalgebra_round_trip"] = again == c
        out["coalgebra_dim"] = c.dim
    if not out:
        raise UsageError("roundtrip needs --relations or --coalgebra")
    out["ok"] = all(v for k, v in out.items() if k.endswith("round_trip"))
    return out


def cmd_criterion(args) -> dict:
    c = _coalgebra(args)
    w = criterion_witness(c, args.source, args.sink, args.maxlen)
    out = w.to_dict(c.quiver)
    out["tameness_flags"] = [f.message for f in tameness_diagnostic(c)]
    return out


def _comodule_inputs(args, over_localized: bool):
    c = _coalgebra(args)
    loc = None
    if args.vertices:
        loc = localize_coalgebra(c, _vertices(c.quiver, args.vertices))
    if over_localized:
        if loc is None:
            raise UsageError("--vertices is required")
        m = parse_comodule(_read(args.comodule), loc.coalgebra, args.comodule)
    else:
        m = parse_comodule(_read(args.comodule), c, args.comodule)
    return c, loc, m


def _comodule_summary(m) -> dict:
    layers = socle_filtration(m)
    return {
        "dim": m.dim,
        "length_vector": _lv(length_vector(m)),
        "loewy_length": len(layers),
        "socle": _lv(layers[0].multiplicities) if layers else {},
        "hom_simple_dims": {x: len(hom_simple(m, x)) for x in m.quiver.vertices},
    }


def cmd_comodule(args) -> dict:
    action = args.action
    if action == "validate":
        _, _, m = _comodule_inputs(args, over_localized=bool(args.vertices))
        ok, diags = validate(m)
        args._exit = 0 if ok else 1
        return {"valid": ok, "dim": m.dim, "diagnostics": [str(d) for d in diags]}
    if action == "length":
        _, _, m = _comodule_inputs(args, over_localized=bool(args.vertices))
        _require_valid(m)
        return _comodule_summary(m)
    if action == "quotient":
        c, loc, m = _comodule_inputs(args, over_localized=False)
        if loc is None:
            raise UsageError("--vertices is required")
        _require_valid(m)
        em = quotient_functor(m, loc.X, loc)
        out = _comodule_summary(em)
        out["localized_arrows"] = [a.id for a in loc.quiver.arrows]
        out["comodule"] = comodule_to_text(em)
        return out
    if action == "section":
        c, loc, n = _comodule_inputs(args, over_localized=True)
        _require_valid(n)
        s = cotensor_section(n, c, loc.X, loc, cap=args.cap)
        out = _comodule_summary(s)
        out["comodule"] = comodule_to_text(s)
        return out
    raise UsageError(f"unknown comodule action {action!r}")


def _require_valid(m):
    ok, diags = validate(m)
    if not ok:
        raise ContractError(f"input is not a comodule: {diags[0]}", module="comodules")


def cmd_selftest(args) -> dict:
    from . import selftest

    results = selftest.run(args.seed, scale=args.scale, only=args.suite)
    args._exit = 0 if all(r.ok for r in results) else 1
    return {
        "seed": args.seed,
        "suites": [{"name": r.name, "trials": r.trials, "failures": r.failures[:5], "ok": r.ok} for r in results],
        "ok": all(r.ok for r in results),
    }


# -- output ------------------------------------------------------------------


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{str(k).ljust(width)}  {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                sub = _text(item, indent + 1)
                lines.append(f"{pad}- " + sub[0].lstrip())
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return ", ".join(_scalar(x) for x in v) if v else "(none)"
    if isinstance(v, dict):
        return "(none)"
    if isinstance(v, str) and "\n" in v:
        return "\n" + v.rstrip("\n")
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    return "\n".join(_text(report)) + "\n"


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    common.add_argument("--maxlen", type=int, default=None, help="path length bound")

    p = argparse.ArgumentParser(prog="quivercoalg", description="Exact computations with quivers and path coalgebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("paths", cmd_paths, "enumerate paths")
    sp.add_argument("--quiver")
    sp.add_argument("--coalgebra")
    sp.add_argument("--source", required=True)
    sp.add_argument("--target")

    sp = add("cells", cmd_cells, "enumerate cells relative to a vertex set")
    sp.add_argument("--quiver")
    sp.add_argument("--coalgebra")
    sp.add_argument("--vertices", required=True)
    sp.add_argument("--source")
    sp.add_argument("--target")

    sp = add("tails", cmd_tails, "enumerate tails relative to a vertex set")
    sp.add_argument("--quiver")
    sp.add_argument("--coalgebra", help="also report the tail space inside this coalgebra")
    sp.add_argument("--vertices", required=True)
    sp.add_argument("--source", required=True)

    sp = add("delta", cmd_delta, "comultiply an element of KQ")
    sp.add_argument("--quiver")
    sp.add_argument("--coalgebra")
    sp.add_argument("--element", required=True)

    sp = add("closure", cmd_closure, "subcoalgebra generated by elements")
    sp.add_argument("--quiver")
    sp.add_argument("--coalgebra")
    sp.add_argument("--generator", action="append")
    sp.add_argument("--no-admissible", action="store_true")
    sp.add_argument("--emit-coalgebra", metavar="FILE")

    for name, fn, help_ in (("localize", cmd_localize, "localize at a vertex set"),
                            ("classify", cmd_classify, "split/semicentral/colocalizing tests")):
        sp = add(name, fn, help_)
        sp.add_argument("--coalgebra")
        sp.add_argument("--quiver", help="use the full path coalgebra of this quiver")
        sp.add_argument("--vertices", required=True)
        if name == "localize":
            sp.add_argument("--classify", action="store_true")
            sp.add_argument("--reexpress", metavar="VECTOR")

    sp = add("dualize", cmd_dualize, "relation ideal <-> subcoalgebra")
    sp.add_argument("--quiver")
    sp.add_argument("--relations")
    sp.add_argument("--coalgebra")
    sp.add_argument("--strict", action="store_true")
    sp.add_argument("--emit-coalgebra", metavar="FILE")
    sp.add_argument("--emit-relations", metavar="FILE")

    sp = add("roundtrip", cmd_roundtrip, "check the duality round trip")
    sp.add_argument("--quiver")
    sp.add_argument("--relations")
    sp.add_argument("--coalgebra")

    sp = add("criterion", cmd_criterion, "bounded witness search for the non-path-coalgebra criterion")
    sp.add_argument("--coalgebra")
    sp.add_argument("--quiver")
    sp.add_argument("--source", required=True)
    sp.add_argument("--sink", required=True)

    sp = add("comodule", cmd_comodule, "finite-dimensional comodules")
    sp.add_argument("action", choices=("validate", "length", "quotient", "section"))
    sp.add_argument("--coalgebra")
    sp.add_argument("--quiver")
    sp.add_argument("--comodule", required=True)
    sp.add_argument("--vertices", help="localizing vertex set (the comodule is over eCe for section)")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)

    sp = add("selftest", cmd_selftest, "randomized property suites")
    sp.add_argument("--scale", type=float, default=1.0)
    sp.add_argument("--suite", action="append")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except QuiverCoalgError as e:
        print(f"error [{getattr(e, 'module', 'quivercoalg')}]: {e}", file=sys.stderr)
        return 1
    if args.command == "selftest":
        print(f"seed {args.seed}", file=sys.stderr)
    sys.stdout.write(render(report, args.format))
    return getattr(args, "_exit", 0)


if __name__ == "__main__":
    sys.exit(main())
