"""CLI behaviour and byte-stable golden outputs.

Regenerate the golden files with ``HILBMAT_REGEN_GOLDEN=1 pytest tests/test_cli.py``.
"""

import io
import json
import os
from pathlib import Path

import pytest

from hilbmat.cli import run

from hilbmat.matrix import parse_matrix

from conftest import FIXTURES, load_matrix

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("check-ex2", ["check", "ex2.delta"], 0),
    ("check-ex1", ["check", "ex1.matrix"], 0),
    ("check-ex0-1", ["check", "ex0-1.matrix"], 0),
    ("check-ex0-2", ["check", "ex0-2.matrix"], 0),
    ("check-ex0-3", ["check", "ex0-3.matrix"], 0),
    ("verify-ex2", ["verify", "ex2.matrix"], 0),
    ("verify-ex1", ["verify", "ex1.matrix"], 0),
    ("verify-ex0-1", ["verify", "ex0-1.matrix"], 1),
    ("verify-ex0-2", ["verify", "ex0-2.matrix"], 1),
    ("verify-ex0-3", ["verify", "ex0-3.matrix"], 0),
    ("verify-ex1-json", ["verify", "ex1.matrix", "--json"], 0),
    ("delta-ex2", ["delta", "ex2.matrix"], 0),
    ("integrate-ex1", ["integrate", "ex1.delta"], 0),
    ("scheme-ex1", ["scheme", "ex1.matrix", "--ascii"], 0),
    ("scheme-ex0-2", ["scheme", "ex0-2.matrix"], 0),
    ("lines-ex1", ["lines", "ex1.matrix"], 0),
    ("lines-ex0-2", ["lines", "ex0-2.matrix", "--json"], 0),
    ("hilbert-ex1-z", ["hilbert", "ex1-z.config"], 0),
    ("hilbert-ex0-3-params", ["hilbert", "ex0-3-x.config", "--params", "3,5,7,9", "2,4,6,8"], 0),
    ("separator-ex1-z", ["separator", "ex1-z.config", "--point", "0,7"], 1),
    ("separator-ex1-z-deg", ["separator", "ex1-z.config", "--point", "0,7", "--degree", "0,7"], 0),
    ("delete-ex0-3-none", ["delete", "ex0-3-x.config", "--point", "0,2"], 1),
    ("delete-staircase", ["delete", "ex2-x.config", "--point", "1,4"], 0),
    ("delete-staircase-corner", ["delete", "ex2-x.config", "--point", "3,2", "--json"], 0),
    ("delete-y-none", ["delete", "ex0-1-y.config", "--point", "2,2"], 1),
    ("addline-ex0-3", ["addline", "ex0-3-x.config", "--n", "4", "--skip", "1,3"], 0),
    ("check-ex2-json", ["check", "ex2.delta", "--json"], 0),
]


def invoke(argv, cwd=FIXTURES):
    out, err = io.StringIO(), io.StringIO()
    old = os.getcwd()
    os.chdir(cwd)
    try:
        code = run(argv, out=out, err=err)
    finally:
        os.chdir(old)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code):
    got_code, out, err = invoke(argv)
    assert got_code == code, err
    path = GOLDEN / f"{name}.out"
    if os.environ.get("HILBMAT_REGEN_GOLDEN"):
        path.write_text(out)
    assert out == path.read_text()
    # a second run is byte-identical
    assert invoke(argv)[1] == out


def test_delta_then_integrate_is_identity(tmp_path):
    for name in ["ex2.matrix", "ex1.matrix", "ex0-1.matrix", "ex0-2.matrix", "ex0-3.matrix"]:
        code, d, _ = invoke(["delta", name])
        assert code == 0
        (tmp_path / "d.txt").write_text(d)
        code, m, _ = invoke(["integrate", str(tmp_path / "d.txt")])
        assert code == 0
        assert parse_matrix(m) == load_matrix(name)


def test_help_exits_zero():
    code, out, _ = invoke(["verify", "--help"])
    assert code == 0
    assert out.startswith("usage: hilbmat verify")


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["check"],
        ["check", "no-such-file"],
        ["check", "ex2.delta", "--unknown"],
        ["delta", "ex2.delta"],
        ["integrate", "ex2.matrix"],
        ["separator", "ex1-z.config", "--point", "zz"],
        ["separator", "ex1-z.config", "--point", "5,5"],
        ["addline", "ex0-3-x.config", "--n", "4", "--skip", "9"],
        ["hilbert", "ex0-3-x.config", "--params", "1,2", "1,2"],
        ["explore", "--trials", "0"],
        ["verify", "ex1-z.config"],
    ],
)
def test_usage_errors(argv):
    code, _, err = invoke(argv)
    assert code == 2
    assert err


def test_check_inadmissible(tmp_path):
    (tmp_path / "bad.delta").write_text("hilbert-matrix v1 rows=2 cols=2 kind=delta\n1 0\n0 1\n")
    code, out, _ = invoke(["check", "bad.delta"], cwd=tmp_path)
    assert code == 1
    assert out.startswith("admissible: false")


def test_json_fields():
    code, out, _ = invoke(["verify", "ex0-1.matrix", "--json"])
    data = json.loads(out)
    assert code == 1
    assert data["mismatch"] == {"cell": [3, 3], "expected": 13, "actual": 14}
    assert data["delta_regular"] is False


def test_explore_logs(tmp_path):
    code, out, _ = invoke(["explore", "--seed", "42", "--trials", "100", "--log", "a.log"], cwd=tmp_path)
    assert code == 0
    assert out.splitlines()[0] == "sampled=100"
    assert (tmp_path / "a.log").read_text().startswith("seed=42 trial=")
