"""Compare the compiled GMP rank kernel with the pure-Python fallback.

    python benchmarks/bench_rank.py [--repeat N]

Workloads: the full Hilbert window of a 24-point scheme (many rank queries
on one evaluation matrix), and single ranks of random dense integer
matrices of growing size.
"""

import argparse
import random
import time

from hilbmat import exact
from hilbmat.exact import PureIntMatrix, pure_rank
from hilbmat.grid import associated_scheme
from hilbmat.matrix import as_delta, parse_matrix
from hilbmat.oracle import LineParams, evaluation_matrix

LARGE_EXAMPLE = """hilbert-matrix v1 rows=10 cols=9 kind=delta
1 1 1 1 1 1 1 1 0
1 1 1 1 1 1 0 0 0
1 1 1 1 1 1 0 -1 0
1 1 1 1 0 0 -1 0 0
1 1 1 1 0 -2 0 0 0
1 1 1 0 -2 -1 0 0 0
1 1 1 -3 0 0 0 0 0
1 1 -2 0 0 0 0 0 0
1 1 -2 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0
"""


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def window_queries(cls, rows, dmax, emax):
    mat = cls(rows)
    for d in range(dmax + 1):
        for e in range(emax + 1):
            mat.rank(cols=[s * (emax + 1) + t for s in range(d + 1) for t in range(e + 1)])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if exact.BACKEND != "gmp":
        print("compiled extension not available; only the fallback can be timed")
    backends = [("python", PureIntMatrix, pure_rank)]
    if exact.BACKEND == "gmp":
        from hilbmat.exact._bareiss import GmpIntMatrix, bareiss_rank

        backends.insert(0, ("gmp", GmpIntMatrix, bareiss_rank))

    z = associated_scheme(as_delta(parse_matrix(LARGE_EXAMPLE))).config
    dmax, emax = len(z.occupied_rows()), len(z.occupied_cols())
    params = [LineParams.default(z.rows, z.cols), LineParams.random(z.rows, z.cols, random.Random(1), bound=1000)]
    print(f"{'workload':44} " + " ".join(f"{name:>10}" for name, _, _ in backends) + "   speedup")
    for label, p in zip(("default params", "random params up to 1000"), params):
        rows = evaluation_matrix(z, p, (dmax, emax))
        times = [best_of(lambda c=cls: window_queries(c, rows, dmax, emax), args.repeat) for _, cls, _ in backends]
        _line(f"24-point window, {label}", times)

    rng = random.Random(7)
    for n, bits in ((20, 16), (40, 16), (60, 32), (80, 64)):
        rows = [[rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(n)] for _ in range(n)]
        times = [best_of(lambda f=fn: f([r[:] for r in rows]), args.repeat) for _, _, fn in backends]
        _line(f"dense {n}x{n}, {bits}-bit entries", times)


def _line(label, times):
    cells = " ".join(f"{t * 1000:9.2f}ms" for t in times)
    speed = f"{times[-1] / times[0]:8.1f}x" if len(times) > 1 else ""
    print(f"{label:44} {cells} {speed}")


if __name__ == "__main__":
    main()
