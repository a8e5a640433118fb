"""Golden reports for the worked examples, exit codes and determinism.

Regenerate the goldens with ``python3 tests/test_cli.py --regen``.
"""

from __future__ import annotations

import contextlib
import io
import json
import os
import subprocess
import sys
from pathlib import Path as FsPath

import pytest

from quivercoalg.cli import main

HERE = FsPath(__file__).parent
FIX = HERE / "fixtures"
GOLDEN = HERE / "golden"

CASES = {
    "localize_diamond": ["localize", "--coalgebra", "diamond.coalg", "--vertices", "x1,x3,x4", "--maxlen", "2",
                         "--reexpress", "a1.a2 + a3.a4", "--classify"],
    "localize_diamond_kq": ["localize", "--quiver", "diamond.q", "--vertices", "x1,x3,x4", "--maxlen", "2",
                            "--reexpress", "a1.a2 + a3.a4"],
    "localize_star5": ["localize", "--coalgebra", "star5.coalg", "--vertices", "x", "--classify"],
    "localize_h4": ["localize", "--coalgebra", "h4.coalg", "--vertices", "x,y", "--maxlen", "2"],
    "classify_chain3": ["classify", "--coalgebra", "chain3.coalg", "--vertices", "1,3"],
    "classify_diamond": ["classify", "--coalgebra", "diamond.coalg", "--vertices", "x1,x3,x4", "--maxlen", "2"],
    "criterion_h4": ["criterion", "--coalgebra", "h4.coalg", "--source", "x", "--sink", "y", "--maxlen", "2"],
    "criterion_diamond": ["criterion", "--coalgebra", "diamond.coalg", "--source", "x1", "--sink", "x4"],
    "dualize_ladder": ["dualize", "--quiver", "ladder.q", "--relations", "all-ge2.rel", "--maxlen", "4"],
    "dualize_diamond": ["dualize", "--coalgebra", "diamond.coalg"],
    "roundtrip_ladder": ["roundtrip", "--quiver", "ladder.q", "--relations", "all-ge2.rel", "--maxlen", "4"],
    "delta_diamond": ["delta", "--quiver", "diamond.q", "--element", "a1.a2 + a3.a4"],
    "paths_diamond": ["paths", "--quiver", "diamond.q", "--source", "x1", "--target", "x4", "--maxlen", "2"],
    "cells_diamond": ["cells", "--quiver", "diamond.q", "--vertices", "x1,x3,x4", "--maxlen", "3"],
    "tails_star5": ["tails", "--coalgebra", "star5.coalg", "--vertices", "x",
                    "--source", "x", "--maxlen", "2"],
    "closure_diamond": ["closure", "--quiver", "diamond.q", "--generator", "a1.a2 + a3.a4", "--maxlen", "2"],
    "comodule_length_hull": ["comodule", "length", "--coalgebra", "diamond.coalg", "--comodule", "diamond-hull.comod"],
    "comodule_quotient_hull": ["comodule", "quotient", "--coalgebra", "diamond.coalg", "--comodule",
                               "diamond-hull.comod", "--vertices", "x1,x3,x4"],
    "comodule_section_simple": ["comodule", "section", "--coalgebra", "diamond.coalg", "--comodule",
                                "simple-x1.comod", "--vertices", "x1,x3,x4"],
    "comodule_validate_bad": ["comodule", "validate", "--coalgebra", "diamond.coalg", "--comodule",
                              "bad-counit.comod"],
}
TEXT_CASES = ("localize_diamond", "criterion_h4", "classify_chain3", "comodule_length_hull")


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(FIX)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(argv)
    finally:
        os.chdir(cwd)
    return code, out.getvalue(), err.getvalue()


def _golden_items():
    for name, argv in CASES.items():
        yield name + ".json", argv + ["--format", "json"]
        if name in TEXT_CASES:
            yield name + ".txt", argv + ["--format", "text"]


@pytest.mark.parametrize("fname,argv", list(_golden_items()), ids=lambda x: x if isinstance(x, str) else "")
def test_golden(fname, argv):
    code, out, _ = run(argv)
    assert code == (1 if "validate_bad" in fname else 0)
    assert out == (GOLDEN / fname).read_text(encoding="utf-8")


def test_byte_identical_runs():
    for argv in (CASES["localize_h4"], CASES["dualize_ladder"], ["selftest", "--seed", "4", "--scale", "0.1"]):
        assert run(argv) == run(argv)


def test_worked_example_contents():
    rep = json.loads((GOLDEN / "localize_diamond.json").read_text())
    assert [a["id"] for a in rep["localized_quiver"]["arrows"]] == ["bar_a3", "bar_a4"]
    assert rep["reexpressed"]["image_algebraic"] == "bar_a4·bar_a3"
    assert rep["classification"]["split"] is False
    kq = json.loads((GOLDEN / "localize_diamond_kq.json").read_text())
    assert kq["reexpressed"]["image_algebraic"] == "bar_a1_a2 + bar_a4·bar_a3"
    assert json.loads((GOLDEN / "criterion_h4.json").read_text())["witness_size"] == 3
    assert json.loads((GOLDEN / "roundtrip_ladder.json").read_text())["ok"] is True
    assert json.loads((GOLDEN / "classify_chain3.json").read_text())["split"] is True


def test_dualize_then_reverse(tmp_path):
    out = tmp_path / "ladder.coalg"
    rel = tmp_path / "ladder.rel"
    code, _, _ = run(["dualize", "--quiver", "ladder.q", "--relations", "all-ge2.rel", "--maxlen", "4",
                      "--emit-coalgebra", str(out)])
    assert code == 0
    code, rep, _ = run(["dualize", "--coalgebra", str(out), "--emit-relations", str(rel)])
    assert code == 0 and json.loads(rep)["violations"] == []
    code, rep, _ = run(["roundtrip", "--relations", str(rel), "--coalgebra", str(out)])
    assert code == 0 and json.loads(rep)["ok"] is True


@pytest.mark.parametrize("argv,code,needle", [
    (["paths", "--quiver", "bad-vertex.q", "--source", "x1", "--maxlen", "2"], 2, "bad-vertex.q:2:13"),
    (["paths", "--quiver", "missing.q", "--source", "x1", "--maxlen", "2"], 2, "cannot read"),
    (["delta", "--quiver", "diamond.q", "--element", "a1 +"], 2, "--element:1:5"),
    (["localize", "--coalgebra", "diamond.coalg", "--vertices", "x9"], 1, "error [quiver]"),
    (["closure", "--quiver", "diamond.q", "--generator", "a1.a2", "--maxlen", "1"], 1, "error [pathcoalg]"),
    (["comodule", "section", "--coalgebra", "diamond.coalg", "--comodule", "simple-x1.comod",
      "--vertices", "x1,x3,x4", "--cap", "1"], 1, "error [comodules]"),
    (["comodule", "length", "--coalgebra", "diamond.coalg", "--comodule", "bad-counit.comod"], 1, "not a comodule"),
])
def test_exit_codes(argv, code, needle):
    got, out, err = run(argv)
    assert got == code
    assert needle in err and out == ""


def test_console_script():
    exe = FsPath(sys.executable).parent / "quivercoalg"
    cmd = [str(exe)] if exe.exists() else [sys.executable, "-m", "quivercoalg.cli"]
    res = subprocess.run(cmd + ["criterion", "--coalgebra", "h4.coalg", "--source", "x", "--sink", "y"],
                         cwd=FIX, capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == (GOLDEN / "criterion_h4.json").read_text(encoding="utf-8")


def regenerate():
    GOLDEN.mkdir(exist_ok=True)
    for fname, argv in _golden_items():
        _, out, _ = run(argv)
        (GOLDEN / fname).write_text(out, encoding="utf-8")
        print("wrote", fname)


if __name__ == "__main__" and "--regen" in sys.argv:
    regenerate()
