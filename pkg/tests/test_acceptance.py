"""The ten acceptance criteria, one test each.

Every criterion prints a ``criterion N: PASS|FAIL ...`` line; under pytest
the lines are also repeated in the terminal summary.  Run this file
directly to get just the lines.
"""

import json
import random
import sys
import time
from collections import Counter

import pytest

from hilbmat.cli import run
from hilbmat.deletion import deletion_update, trace_conserves
from hilbmat.grid import acm_from_delta, associated_scheme, line_counts
from hilbmat.matrix import (
    accumulate,
    check_structure_lemmas,
    condition1,
    condition2,
    is_admissible,
    is_delta_regular,
    is_plain,
    line_stats,
    negative_locus,
)
from hilbmat.oracle import LineParams, find_separator, hilbert_delta, hilbert_window
from hilbmat.realization import random_block_config, random_config, random_staircase, verify

from conftest import ACCEPTANCE_LINES, FIXTURES, load_delta, load_matrix


def _cli(argv, cwd=FIXTURES):
    import io
    import os

    out, err = io.StringIO(), io.StringIO()
    old = os.getcwd()
    os.chdir(cwd)
    try:
        code = run(argv, out=out, err=err)
    finally:
        os.chdir(old)
    return code, out.getvalue()


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def criterion_1():
    t = time.perf_counter()
    code, out = _cli(["check", "ex2.delta", "--json"])
    elapsed = time.perf_counter() - t
    data = json.loads(out)
    T = {tuple(c["cell"]) for c in data["T"]}
    pairs = [(m["a"], m["b"]) for m in data["marked"]]
    ok = (
        code == 0
        and data["admissible"]
        and data["plain"]
        and data["delta_regular"]
        and T == {(1, 6), (2, 5), (2, 4), (3, 3)}
        and Counter(pairs) == Counter([(0, 4), (0, 1), (0, 2), (1, 3), (0, 0), (1, 1), (2, 2)])
        and elapsed < 1.0
    )
    return ok, f"check on the 4-row example: T={sorted(T)} pairs={pairs} in {elapsed:.3f}s"


def criterion_2():
    t = time.perf_counter()
    code, out = _cli(["verify", "ex1.matrix", "--json"])
    elapsed = time.perf_counter() - t
    data = json.loads(out)
    z = data["Z"]
    cols = tuple(sum(1 for _, j in z if j == c) for c in range(8))
    printed = load_matrix("ex1.matrix")
    mz = data["M_Z"]
    entrywise = all(
        mz[min(i, len(mz) - 1)][min(j, len(mz[0]) - 1)] == printed.at(i, j) for i in range(14) for j in range(14)
    )
    ok = code == 0 and len(z) == 24 and cols == (5, 5, 4, 3, 3, 2, 1, 1) and entrywise and data["equal"] and elapsed < 5
    return ok, f"verify on the 24-point example: |Z|={len(z)} column counts={cols} equal={data['equal']} in {elapsed:.3f}s"


def criterion_3():
    code, out = _cli(["verify", "ex0-1.matrix", "--json"])
    data = json.loads(out)
    mm = data["mismatch"]
    ok = (
        code == 1
        and data["delta_regular"] is False
        and mm == {"cell": [3, 3], "expected": 13, "actual": 14}
    )
    return ok, f"not delta-regular, mismatch {mm}, exit {code}"


def criterion_4():
    d = load_delta("ex0-2.matrix")
    plain = is_plain(d)
    rep = verify(d)
    pairs = [p for p, _ in plain.collisions]
    ok = not plain and pairs == [(0, 0)] and len(rep.scheme.config) == 4 and rep.expected.degree == 3
    return ok, f"plain={bool(plain)} collisions={pairs} |Z|={len(rep.scheme.config)} deg M={rep.expected.degree}"


def criterion_5():
    d = load_delta("ex0-3.matrix")
    rep = verify(d)
    c1 = ((2, 2), 1, 2) in rep.cond1.witnesses
    c2 = ((2, 2), 1, 2) in rep.cond2.witnesses
    ok = bool(rep.plain) and bool(rep.delta_regular) and not rep.cond1 and not rep.cond2 and c1 and c2 and rep.equal
    return ok, f"plain, delta-regular, a(2,2)=1<2=a(1,3) {c1}, b(2,2)=1<2=b(3,1) {c2}, equal={rep.equal}"


def criterion_6():
    rng = random.Random(606)
    n = 500
    bad = Counter()
    timings = {}
    cfgs = []
    for _ in range(n):
        a, b = rng.randint(0, 4), rng.randint(0, 4)
        k = rng.randint(1, min(12, (a + 1) * (b + 1)))
        cfgs.append(random_config(a, b, k, rng))
    grids = {}

    t = time.perf_counter()
    for idx, cfg in enumerate(cfgs):
        grids[idx] = hilbert_delta(cfg)
        if not is_admissible(grids[idx]):
            bad["admissible"] += 1
    timings["admissible"] = time.perf_counter() - t

    t = time.perf_counter()
    for idx, cfg in enumerate(cfgs):
        st = line_stats(accumulate(grids[idx]))
        lc = line_counts(cfg)
        if st.row_dist != dict(Counter(x for x in lc.per_row if x)) or st.col_dist != dict(
            Counter(x for x in lc.per_col if x)
        ):
            bad["line_stats"] += 1
    timings["line_stats"] = time.perf_counter() - t

    t = time.perf_counter()
    for idx in range(n):
        if not check_structure_lemmas(grids[idx]):
            bad["lemmas"] += 1
    timings["lemmas"] = time.perf_counter() - t

    ok = not bad and all(v < 60 for v in timings.values())
    times = " ".join(f"{k}={v:.2f}s" for k, v in timings.items())
    return ok, f"{n} configs, failures={dict(bad)}, {times}"


def criterion_7():
    rng = random.Random(707)
    n = 200
    failures = []
    t = time.perf_counter()
    for k in range(n):
        grid = random_staircase(rng.randint(0, 5), rng.randint(0, 5), rng)
        x = acm_from_delta(grid)
        pt = rng.choice(x.sorted_points())
        rep = deletion_update(x, pt)
        form = find_separator(x, pt, (rep.q, rep.p))
        if not rep.agrees or form is None or form.h0_jump != 1:
            failures.append((k, pt))
    elapsed = time.perf_counter() - t
    return not failures, f"{n} staircases, {len(failures)} failures, {elapsed:.2f}s"


def criterion_8():
    rng = random.Random(808)
    needed = 200
    passed = nontrivial = attempts = 0
    failures = []
    t = time.perf_counter()
    while nontrivial < needed and attempts < 20000:
        attempts += 1
        a, b = rng.randint(1, 5), rng.randint(1, 5)
        if rng.random() < 0.5:
            cfg = random_block_config(a, b, rng)
        else:
            cfg = random_config(a, b, rng.randint(1, (a + 1) * (b + 1)), rng)
        d = hilbert_delta(cfg)
        if not (is_plain(d) and is_delta_regular(d) and (condition1(d) or condition2(d))):
            continue
        passed += 1
        if negative_locus(d).cells:
            nontrivial += 1
        if not verify(d).equal or not trace_conserves(d):
            failures.append(attempts)
    elapsed = time.perf_counter() - t
    ok = nontrivial >= needed and not failures
    return ok, (
        f"{passed} matrices met the hypotheses ({nontrivial} with negative cells), "
        f"{len(failures)} failures, {elapsed:.2f}s"
    )


def criterion_9():
    rng = random.Random(909)
    results = []
    for name in ("ex1.matrix", "ex0-3.matrix"):
        z = associated_scheme(load_delta(name)).config
        base = hilbert_window(z)
        seen = set()
        while len(seen) < 3:
            p = LineParams.random(z.rows, z.cols, rng)
            if (p.u, p.v) in seen:
                continue
            seen.add((p.u, p.v))
            results.append(hilbert_window(z, p) == base)
    return all(results), f"{len(results)} parameter choices over two schemes, all identical={all(results)}"


def criterion_10(tmp):
    logs = []
    for name in ("first.log", "second.log"):
        code, _ = _cli(["explore", "--seed", "42", "--trials", "100", "--log", name], cwd=tmp)
        logs.append((tmp / name).read_bytes())
    same = logs[0] == logs[1]
    lines = len(logs[0].splitlines())
    return same and code == 0, f"two runs, {lines} record lines each, byte-identical={same}"


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n):
    ok, detail = globals()[f"criterion_{n}"]()
    report(n, ok, detail)


def test_criterion_10(tmp_path):
    ok, detail = criterion_10(tmp_path)
    report(10, ok, detail)


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    failed = 0
    for n in range(1, 11):
        if n == 10:
            with tempfile.TemporaryDirectory() as d:
                ok, detail = criterion_10(Path(d))
        else:
            ok, detail = globals()[f"criterion_{n}"]()
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
        failed += not ok
    sys.exit(1 if failed else 0)
