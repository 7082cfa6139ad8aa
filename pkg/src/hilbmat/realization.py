"""Does an admissible matrix equal the Hilbert matrix of its associated scheme?

:func:`verify` builds the associated scheme, runs the rank oracle on it
and compares windows.  The sufficient hypotheses (plain, delta-regular and
one of the two margin inequalities) are reported alongside, together with
the two simpler criteria that imply them.  The explorer samples matrices
that are plain and delta-regular but satisfy neither inequality, which is
the case the hypotheses leave open.
"""

import random
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import InternalInconsistency, LogWriteFailure
from .grid import GridConfig, associated_scheme
from .matrix import (
    DeltaGrid,
    accumulate,
    condition1,
    condition2,
    is_delta_regular,
    is_plain,
    negative_locus,
    profile,
    require_admissible,
)
from .oracle import hilbert_delta, hilbert_window


@dataclass(frozen=True)
class VerifierReport:
    grid: DeltaGrid
    plain: object
    delta_regular: object
    cond1: object
    cond2: object
    scheme: object  # AssociatedScheme
    expected: object  # HilbertWindow of the input
    actual: object  # oracle HilbertWindow of Z
    mismatch: tuple = None  # ((i, j), expected, actual) of the first differing cell

    admissible = True

    @property
    def equal(self):
        return self.mismatch is None

    @property
    def hypotheses(self):
        return bool(self.plain) and bool(self.delta_regular) and (bool(self.cond1) or bool(self.cond2))

    @property
    def violates_theorem(self):
        return self.hypotheses and not self.equal


def compare_windows(expected, actual):
    rows, cols = max(expected.rows, actual.rows), max(expected.cols, actual.cols)
    for i in range(rows):
        for j in range(cols):
            if expected.at(i, j) != actual.at(i, j):
                return ((i, j), expected.at(i, j), actual.at(i, j))
    return None


def verify(grid, params=None):
    require_admissible(grid)
    scheme = associated_scheme(grid)
    expected = accumulate(grid)
    actual = hilbert_window(scheme.config, params)
    return VerifierReport(
        grid=grid,
        plain=is_plain(grid),
        delta_regular=is_delta_regular(grid),
        cond1=condition1(grid),
        cond2=condition2(grid),
        scheme=scheme,
        expected=expected,
        actual=actual,
        mismatch=compare_windows(expected, actual),
    )


def difference_criterion(grid):
    """Strictly increasing ``a - b`` along negative cells going down-left, plus one inequality.

    For negative cells ``(i1, j1)``, ``(i2, j2)`` with ``i1 < i2`` and
    ``j1 > j2`` it requires ``a1 - b1 < a2 - b2``.  When it holds the grid
    must also be plain and delta-regular; that is asserted.
    """
    require_admissible(grid)
    prof = profile(grid)
    cells = [(c.i, c.j) for c in negative_locus(grid, _checked=True)]
    gap = {(i, j): prof.a(i, j) - prof.b(i, j) for i, j in cells}
    ordered = all(
        gap[(i1, j1)] < gap[(i2, j2)]
        for (i1, j1) in cells
        for (i2, j2) in cells
        if i1 < i2 and j1 > j2
    )
    holds = ordered and (bool(condition1(grid)) or bool(condition2(grid)))
    if holds and not (is_plain(grid) and is_delta_regular(grid)):
        raise InternalInconsistency("difference criterion holds but grid is not plain and delta-regular")
    return holds


def single_antidiagonal(grid):
    """Plain grid whose negative cells all have the same ``i + j``."""
    require_admissible(grid)
    if not is_plain(grid):
        return False
    sums = {c.i + c.j for c in negative_locus(grid, _checked=True)}
    return len(sums) <= 1


# --- generators ------------------------------------------------------------


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def staircase_lengths(a, b, rng):
    lengths = [b + 1]
    for _ in range(a):
        lengths.append(rng.randint(1, lengths[-1]))
    return lengths


def random_staircase(a, b, seed):
    """0/1 grid of size exactly ``(a, b)`` whose ones form a staircase."""
    rng = _rng(seed)
    lengths = staircase_lengths(a, b, rng)
    return DeltaGrid(tuple(tuple(1 if j < n else 0 for j in range(b + 1)) for n in lengths))


def random_config(a, b, n_points, seed):
    rng = _rng(seed)
    cells = [(i, j) for i in range(a + 1) for j in range(b + 1)]
    if not 0 <= n_points <= len(cells):
        raise ValueError(f"cannot place {n_points} points on a {a + 1}x{b + 1} grid")
    return GridConfig(a + 1, b + 1, frozenset(rng.sample(cells, n_points)))


def random_config_matrix(a, b, n_points, seed, params=None):
    """Difference grid of a uniformly sampled configuration, by the oracle."""
    return hilbert_delta(random_config(a, b, n_points, seed), params)


def random_block_config(a, b, seed, max_drop=2):
    """Rows and columns dealt into groups, points where the groups agree, a few removed.

    Uniform configurations on small grids almost never fail both margin
    inequalities while staying plain and delta-regular; these block
    patterns do so far more often.
    """
    rng = _rng(seed)
    k = rng.randint(1, min(a, b) + 1)
    rg = [rng.randrange(k) for _ in range(a + 1)]
    cg = [rng.randrange(k) for _ in range(b + 1)]
    pts = sorted((i, j) for i in range(a + 1) for j in range(b + 1) if rg[i] == cg[j])
    if not pts:
        pts = [(0, 0)]
    keep = max(1, len(pts) - rng.randint(0, max_drop))
    return GridConfig(a + 1, b + 1, frozenset(rng.sample(pts, keep)))


def random_admissible_delta(a, b, seed, tries=40):
    """Best-effort direct sampler: a staircase with random negative entries added.

    Candidate negative entries are accepted only if the grid stays
    admissible, so the result is always admissible but the distribution is
    not uniform in any sense.
    """
    from .matrix import is_admissible

    rng = _rng(seed)
    base = [list(r) for r in random_staircase(a, b, rng).entries]
    grid = base
    holes = [(i, j) for i in range(a + 1) for j in range(b + 1) if base[i][j] == 0]
    for _ in range(tries):
        if not holes:
            break
        i, j = rng.choice(holes)
        trial = [list(r) for r in grid]
        trial[i][j] = -rng.randint(1, 3)
        if is_admissible(DeltaGrid(tuple(map(tuple, trial)))):
            grid = trial
    return DeltaGrid(tuple(map(tuple, grid)))


# --- open-problem explorer --------------------------------------------------


@dataclass(frozen=True)
class ExplorerRecord:
    seed: int
    trial: int  # also serves as the record's logical timestamp
    sampler: str
    config: GridConfig  # the sampled configuration, which realizes grid
    grid: DeltaGrid
    plain: bool
    delta_regular: bool
    cond1: bool
    cond2: bool
    candidate: bool
    verdict: str = None  # "match" | "mismatch" | None when filtered out
    mismatch: tuple = None

    def log_line(self):
        rows = ";".join(",".join(str(x) for x in r) for r in self.grid.entries)
        pts = ";".join(f"{i},{j}" for i, j in self.config.sorted_points())
        parts = [f"seed={self.seed}", f"trial={self.trial}", f"verdict={self.verdict}"]
        if self.mismatch:
            (i, j), exp, got = self.mismatch
            parts.append(f"cell=({i},{j}) expected={exp} actual={got}")
        parts.append(f"sampler={self.sampler}")
        parts.append(f"delta={rows}")
        parts.append(f"config={pts}")
        return " ".join(parts)


SAMPLERS = ("mixed", "uniform", "blocks")


def explore_trial(seed, trial, rows, cols, max_points=None, sampler="mixed"):
    rng = random.Random(f"{seed}:{trial}")
    if sampler == "mixed":
        sampler = "blocks" if rng.random() < 0.5 else "uniform"
    if sampler == "uniform":
        cap = rows * cols if max_points is None else min(max_points, rows * cols)
        cfg = random_config(rows - 1, cols - 1, rng.randint(1, cap), rng)
    elif sampler == "blocks":
        cfg = random_block_config(rows - 1, cols - 1, rng)
    else:
        raise ValueError(f"unknown sampler {sampler!r}")
    grid = hilbert_delta(cfg)
    plain, reg = bool(is_plain(grid)), bool(is_delta_regular(grid))
    c1, c2 = bool(condition1(grid)), bool(condition2(grid))
    candidate = plain and reg and not c1 and not c2
    verdict = mismatch = None
    if candidate:
        rep = verify(grid)
        verdict = "match" if rep.equal else "mismatch"
        mismatch = rep.mismatch
    return ExplorerRecord(seed, trial, sampler, cfg, grid, plain, reg, c1, c2, candidate, verdict, mismatch)


def _trial_star(args):
    return explore_trial(*args)


def explore_open_problem(trials, rows, cols, seed, log=None, workers=1, max_points=None, sampler="mixed"):
    """Sample matrices from random configurations and verify every open-case candidate.

    Trial ``t`` uses an RNG seeded by ``(seed, t)``, so results do not depend
    on ``workers``.  ``sampler`` picks uniform configurations, block
    patterns, or a per-trial coin flip between the two.  Candidate records are appended to ``log`` in trial order.
    Returns ``(summary, records)``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if sampler not in SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}")
    jobs = [(seed, t, rows, cols, max_points, sampler) for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_trial_star, jobs, chunksize=8))
    else:
        records = [_trial_star(j) for j in jobs]
    picked = [r for r in records if r.candidate]
    if log is not None:
        lock = threading.Lock()
        try:
            with lock, open(log, "a", encoding="utf-8") as fh:
                for r in picked:
                    fh.write(r.log_line() + "\n")
        except OSError as exc:
            raise LogWriteFailure(str(exc)) from exc
    summary = {
        "sampled": len(records),
        "filtered_in": len(picked),
        "match": sum(r.verdict == "match" for r in picked),
        "mismatch": sum(r.verdict == "mismatch" for r in picked),
    }
    return summary, picked
