"""Command-line interface.

Exit codes: 0 success or verified, 1 a check failed or the matrices differ,
2 bad input or usage.  Every command accepts ``--json``.
"""

import argparse
import contextlib
import json
import sys

from .deletion import add_punctured_line, deletion_update
from .errors import BadSkipList, ConditionsNotMet, HilbmatError, HypothesesNotMet, InternalInconsistency
from .grid import associated_scheme, format_config, parse_config, render_ascii
from .matrix import (
    DeltaGrid,
    HilbertWindow,
    accumulate,
    condition1,
    condition2,
    delta,
    format_matrix,
    is_admissible,
    is_delta_regular,
    is_plain,
    line_stats,
    negative_locus,
    parse_matrix,
)
from .oracle import LineParams, find_separator, hilbert_window, separator_degree
from .realization import explore_open_problem, verify


class UsageError(Exception):
    pass


def _tf(x):
    return "true" if x else "false"


def _cell(c):
    return f"({c[0]},{c[1]})"


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_matrix(path):
    return parse_matrix(_read(path))


def _load_grid(path):
    obj = _load_matrix(path)
    return delta(obj) if isinstance(obj, HilbertWindow) else obj


def _pair(text, what):
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must look like i,j") from None
    return i, j


def _ints(text, what):
    if text.strip() == "":
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of integers") from None


def _matrix_lines(obj):
    return format_matrix(obj).rstrip("\n")


# --- predicate summaries shared by check and verify ---------------------------


def _predicates(grid):
    plain, reg = is_plain(grid), is_delta_regular(grid)
    c1, c2 = condition1(grid), condition2(grid)
    text = [f"plain: {_tf(plain)}"]
    for pair, mps in plain.collisions:
        text[-1] += f" collision={_cell(pair)}x{len(mps)}"
    line = f"delta_regular: {_tf(reg)}"
    if not reg:
        clause, p, q = reg.witnesses[0]
        line += f" witness=({p.i},{p.j},r={p.r})/({q.i},{q.j},r={q.r})"
    text.append(line)
    for name, rep, letter, other in (("cond1", c1, "a", (-1, 1)), ("cond2", c2, "b", (1, -1))):
        line = f"{name}: {_tf(rep)}"
        if not rep:
            (i, j), lhs, rhs = rep.witnesses[0]
            line += f" witness={letter}{_cell((i, j))}={lhs}<{rhs}={letter}{_cell((i + other[0], j + other[1]))}"
        text.append(line)
    data = {
        "plain": bool(plain),
        "collisions": [{"pair": list(p), "count": len(m)} for p, m in plain.collisions],
        "delta_regular": bool(reg),
        "delta_regular_witnesses": [
            {"clause": cl, "first": [p.i, p.j, p.r], "second": [q.i, q.j, q.r]} for cl, p, q in reg.witnesses
        ],
        "cond1": bool(c1),
        "cond1_witnesses": [{"cell": list(c), "lhs": l, "rhs": r} for c, l, r in c1.witnesses],
        "cond2": bool(c2),
        "cond2_witnesses": [{"cell": list(c), "lhs": l, "rhs": r} for c, l, r in c2.witnesses],
    }
    return text, data


# --- commands -----------------------------------------------------------------


def cmd_check(args):
    grid = _load_grid(args.file)
    adm = is_admissible(grid)
    text = [f"admissible: {_tf(adm)}"]
    data = {"admissible": adm.admissible}
    if not adm:
        for name in ("bounded", "upset", "margins"):
            bad = getattr(adm, name)
            if bad:
                text.append(f"  {name}: " + " ".join(str(tuple(x)).replace(" ", "") for x in bad))
            data[name] = [list(x) for x in bad]
        return 1, text, data
    ptext, pdata = _predicates(grid)
    locus = negative_locus(grid)
    text += ptext
    text.append("T: " + (" ".join(_cell(p) for p in locus.positions) or "(empty)"))
    for mp in locus.marked:
        text.append(f"  {_cell((mp.i, mp.j))} c={grid.at(mp.i, mp.j)} r={mp.r} pair={_cell(mp.cell)}")
    data.update(pdata)
    data["T"] = [{"cell": [c.i, c.j], "c": c.c} for c in locus.cells]
    data["marked"] = [{"cell": [m.i, m.j], "r": m.r, "a": m.a, "b": m.b} for m in locus.marked]
    return 0, text, data


def cmd_delta(args):
    obj = _load_matrix(args.file)
    if not isinstance(obj, HilbertWindow):
        raise UsageError("delta expects a kind=M matrix")
    d = delta(obj)
    return 0, [_matrix_lines(d)], {"kind": "delta", "entries": d.tolist()}


def cmd_integrate(args):
    obj = _load_matrix(args.file)
    if not isinstance(obj, DeltaGrid):
        raise UsageError("integrate expects a kind=delta matrix")
    m = accumulate(obj)
    return 0, [_matrix_lines(m)], {"kind": "M", "entries": m.tolist()}


def cmd_scheme(args):
    scheme = associated_scheme(_load_grid(args.file))
    z = scheme.config
    text = [
        f"# acm_points={len(scheme.acm)} deleted={len(scheme.deleted.cells)} "
        f"distinct_deleted={len(scheme.deleted.as_set())} collision={_tf(scheme.collision)}",
        format_config(z).rstrip("\n"),
    ]
    if args.ascii:
        text.append(render_ascii(z).rstrip("\n"))
    data = {
        "rows": z.rows,
        "cols": z.cols,
        "points": [list(p) for p in z.sorted_points()],
        "acm_points": len(scheme.acm),
        "deleted": [list(c) for c in scheme.deleted.cells],
        "collision": scheme.collision,
    }
    return 0, text, data


def _params(args, cfg):
    if not args.params:
        return None
    u, v = (_ints(x, "--params") for x in args.params)
    if len(u) < cfg.rows or len(v) < cfg.cols:
        raise UsageError(f"--params needs {cfg.rows} row and {cfg.cols} column values")
    return LineParams(u, v)


def cmd_hilbert(args):
    cfg = parse_config(_read(args.file))
    w = hilbert_window(cfg, _params(args, cfg))
    return 0, [_matrix_lines(w)], {"kind": "M", "entries": w.tolist(), "degree": w.degree}


def cmd_lines(args):
    obj = _load_matrix(args.file)
    w = obj if isinstance(obj, HilbertWindow) else accumulate(obj)
    st = line_stats(w)

    def fmt(d):
        return " ".join(f"{k}:{v}" for k, v in sorted(d.items(), reverse=True))

    text = [f"row_dist: {fmt(st.row_dist)}", f"col_dist: {fmt(st.col_dist)}", f"i0: {st.i0}", f"j0: {st.j0}"]
    data = {
        "row_dist": {str(k): v for k, v in sorted(st.row_dist.items())},
        "col_dist": {str(k): v for k, v in sorted(st.col_dist.items())},
        "i0": st.i0,
        "j0": st.j0,
    }
    return 0, text, data


def _term(mon, c):
    s, t = mon
    parts = [f"u^{s}" if s else "", f"v^{t}" if t else ""]
    mono = " ".join(p for p in parts if p) or "1"
    return f"{c} {mono}"


def cmd_separator(args):
    cfg = parse_config(_read(args.file))
    point = _pair(args.point, "--point")
    sd = separator_degree(cfg, point)
    deg = _pair(args.degree, "--degree") if args.degree else sd.degree
    form = find_separator(cfg, point, deg)
    text = [f"degree: {_cell(sd.degree)}", f"conditions: {sd.tag}"]
    data = {"q": sd.q, "p": sd.p, "conditions": list(sd.conditions), "searched": list(deg)}
    if form is None:
        text.append(f"separator in {_cell(deg)}: none")
        data["separator"] = None
        return 1, text, data
    text.append(f"separator in {_cell(deg)}: kernel_jump={form.h0_jump}")
    text += [f"  {_term(m, c)}" for m, c in form.terms()]
    data["separator"] = {
        "kernel_jump": form.h0_jump,
        "terms": [{"s": m[0], "t": m[1], "coefficient": str(c)} for m, c in form.terms()],
    }
    return 0, text, data


def cmd_delete(args):
    cfg = parse_config(_read(args.file))
    point = _pair(args.point, "--point")
    try:
        rep = deletion_update(cfg, point)
    except ConditionsNotMet as exc:
        return 1, [f"conditions: none ({exc})"], {"conditions": [], "error": str(exc)}
    text = [
        f"degree: {_cell((rep.q, rep.p))}",
        f"conditions: {rep.tag}",
        "predicted:",
        _matrix_lines(rep.predicted),
        "actual:",
        _matrix_lines(rep.actual),
        f"agrees: {_tf(rep.agrees)}",
    ]
    data = {
        "q": rep.q,
        "p": rep.p,
        "conditions": [] if rep.tag == "none" else [int(x) for x in rep.tag.split("+")],
        "predicted": rep.predicted.tolist(),
        "actual": rep.actual.tolist(),
        "agrees": rep.agrees,
    }
    return (0 if rep.agrees else 1), text, data


def cmd_addline(args):
    cfg = parse_config(_read(args.file))
    skip = _ints(args.skip, "--skip")
    try:
        rep = add_punctured_line(cfg, args.n, skip)
    except BadSkipList as exc:
        raise UsageError(str(exc)) from None
    except (HypothesesNotMet, ValueError) as exc:
        return 1, [f"hypotheses: false ({exc})"], {"hypotheses": False, "error": str(exc)}
    text = [
        "hypotheses: true",
        "decrements: " + (" ".join(_cell(c) for c in rep.decrements) or "(none)"),
        "predicted:",
        _matrix_lines(rep.predicted),
        "actual:",
        _matrix_lines(rep.actual),
        f"agrees: {_tf(rep.agrees)}",
    ]
    data = {
        "hypotheses": True,
        "skip": list(rep.skip),
        "q": list(rep.q),
        "decrements": [list(c) for c in rep.decrements],
        "predicted": rep.predicted.tolist(),
        "actual": rep.actual.tolist(),
        "agrees": rep.agrees,
    }
    return (0 if rep.agrees else 1), text, data


def cmd_verify(args):
    grid = _load_grid(args.file)
    rep = verify(grid)
    ptext, pdata = _predicates(grid)
    text = ["admissible: true"] + ptext
    text.append(f"hypotheses: {_tf(rep.hypotheses)}")
    text.append(f"Z: {len(rep.scheme.config)} points, deg M = {rep.expected.degree}")
    counts = [sum(1 for _, j in rep.scheme.config.points if j == c) for c in range(rep.scheme.config.cols)]
    text.append("Z column counts: " + " ".join(map(str, counts)))
    if rep.equal:
        text.append("equal: true")
    else:
        cell, exp, got = rep.mismatch
        text.append(f"equal: false mismatch at {_cell(cell)}: M={exp} M_Z={got}")
    data = {"admissible": True, **pdata}
    data.update(
        {
            "hypotheses": rep.hypotheses,
            "Z": [list(p) for p in rep.scheme.config.sorted_points()],
            "Z_size": len(rep.scheme.config),
            "degree": rep.expected.degree,
            "M_Z": rep.actual.tolist(),
            "equal": rep.equal,
            "mismatch": None
            if rep.equal
            else {"cell": list(rep.mismatch[0]), "expected": rep.mismatch[1], "actual": rep.mismatch[2]},
        }
    )
    return (0 if rep.equal else 1), text, data


def cmd_explore(args):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    if args.rows < 1 or args.cols < 1:
        raise UsageError("--rows and --cols must be positive")
    summary, _ = explore_open_problem(
        args.trials,
        args.rows,
        args.cols,
        args.seed,
        log=args.log,
        workers=args.workers,
        max_points=args.max_points,
        sampler=args.sampler,
    )
    text = [f"{k}={v}" for k, v in summary.items()]
    return (1 if summary["mismatch"] else 0), text, summary


# --- parser -------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="hilbmat", description="Admissible Hilbert matrices on a grid of lines.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, file=True, file_help="matrix file"):
        p = sub.add_parser(name, help=help, description=help)
        if file:
            p.add_argument("file", help=file_help)
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "admissibility, predicates and negative cells")
    add("delta", cmd_delta, "difference grid of a Hilbert matrix")
    add("integrate", cmd_integrate, "Hilbert matrix of a difference grid")
    p = add("scheme", cmd_scheme, "associated point configuration")
    p.add_argument("--ascii", action="store_true", help="also draw the grid")
    p = add("hilbert", cmd_hilbert, "oracle Hilbert window of a configuration", file_help="config file")
    p.add_argument("--params", nargs=2, metavar=("U", "V"), help="comma-separated row and column parameters")
    add("lines", cmd_lines, "distribution of points on the lines")
    p = add("separator", cmd_separator, "separator degree and form for a point", file_help="config file")
    p.add_argument("--point", required=True, help="i,j")
    p.add_argument("--degree", help="d,e to search instead of the predicted degree")
    p = add("delete", cmd_delete, "predicted and actual grid after deleting a point", file_help="config file")
    p.add_argument("--point", required=True, help="i,j")
    p = add("addline", cmd_addline, "predicted and actual grid after adding a punctured line", file_help="config file")
    p.add_argument("--n", type=int, required=True, help="the new line meets columns 0..n")
    p.add_argument("--skip", default="", help="comma-separated columns the new line misses")
    add("verify", cmd_verify, "compare a matrix with the oracle matrix of its associated scheme")
    p = add("explore", cmd_explore, "sample open-case candidates and verify them", file=False)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--rows", type=int, default=4, help="number of row lines in the sampling grid")
    p.add_argument("--cols", type=int, default=4, help="number of column lines in the sampling grid")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--log", help="append candidate records to this file")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-points", type=int, default=None, help="cap on points for the uniform sampler")
    p.add_argument("--sampler", choices=("mixed", "uniform", "blocks"), default="mixed")
    return parser


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        code, text, data = args.func(args)
    except InternalInconsistency as exc:
        print(f"hilbmat: internal inconsistency: {exc}", file=err)
        return 1
    except (UsageError, HilbmatError, ValueError) as exc:
        print(f"hilbmat {args.command}: {exc}", file=err)
        return 2
    if args.json:
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(text) + "\n")
    return code


def main():
    sys.exit(run())
