"""Predicted difference grids after deleting a point or adding a punctured line.

Every prediction can be cross-checked against the rank oracle; the library
does so when ``check=True`` (the default), which is the expensive path.
"""

from dataclasses import dataclass

from .errors import BadSkipList, ConditionsNotMet, HypothesesNotMet, NotApplicable
from .grid import GridConfig, acm_from_delta, line_counts
from .matrix import (
    DeltaGrid,
    condition1,
    condition2,
    delta,
    is_delta_regular,
    is_plain,
    negative_locus,
    profile,
)
from .oracle import LineParams, hilbert_delta, hilbert_window, separator_degree


def _bump(grid, cells, rows=0, cols=0):
    """Copy of ``grid`` with -1 added once per listed cell."""
    R = max([grid.rows, rows] + [i + 1 for i, _ in cells])
    C = max([grid.cols, cols] + [j + 1 for _, j in cells])
    out = [[grid.at(i, j) for j in range(C)] for i in range(R)]
    for i, j in cells:
        out[i][j] -= 1
    return DeltaGrid(tuple(map(tuple, out)))


@dataclass(frozen=True)
class DeletionReport:
    point: tuple
    p: int
    q: int
    tag: str
    before: DeltaGrid
    predicted: DeltaGrid
    actual: DeltaGrid = None

    @property
    def agrees(self):
        return None if self.actual is None else self.predicted == self.actual

    def row_sum_drop(self):
        """``sum_{j >= p} c(q, j)`` before minus after, measured on the oracle grid; should be 1."""
        if self.actual is None:
            return None
        width = max(self.before.cols, self.actual.cols)
        return sum(self.before.at(self.q, j) - self.actual.at(self.q, j) for j in range(self.p, width))


def deletion_update(cfg, point, params=None, check=True):
    """Predict the difference grid of ``cfg`` minus ``point``.

    With ``q`` and ``p`` the numbers of points left on the column and row
    through ``point``, the prediction is the old grid with one subtracted
    at ``(q, p)``.  Raises :class:`ConditionsNotMet` when none of the three
    sufficient conditions holds.
    """
    window = hilbert_window(cfg, params)
    sd = separator_degree(cfg, point, params, window=window)
    if not sd.conditions:
        raise ConditionsNotMet(f"no separator condition holds for {tuple(point)} (q, p) = {sd.degree}")
    before = delta(window)
    predicted = _bump(before, [(sd.q, sd.p)])
    actual = hilbert_delta(cfg.without(point), params) if check else None
    return DeletionReport(tuple(point), sd.p, sd.q, sd.tag, before, predicted, actual)


@dataclass(frozen=True)
class DeletionTrace:
    cell: tuple
    r: int
    orientation: str  # "row" or "column"
    low: int  # m: first index in the run sharing the marked value
    high: int  # n
    count_form: int  # m + number of later members of the run
    position: int  # p = m + n - j (row) or q = m + n - i (column)

    @property
    def target(self):
        i, j = self.cell
        return (i, self.position) if self.orientation == "row" else (self.position, j)


def trace_orientation(grid):
    """``"row"`` when the row-side inequality holds, else ``"column"``; None if neither."""
    if condition2(grid):
        return "row"
    if condition1(grid):
        return "column"
    return None


def deletion_trace(grid, cell, r, orientation=None, _checked=False):
    """Where deleting the marked point of ``(cell, r)`` lowers the difference grid.

    Row orientation works inside row ``i``: ``m`` and ``n`` are the least
    and greatest columns ``k`` with ``(i, k)`` negative and some
    ``a_ik + s == a_ij + r``, on either side of ``j``; the target is
    ``(i, m + n - j)``.  Column orientation is the transpose, using ``b``.
    """
    if not _checked:
        if not (is_plain(grid) and is_delta_regular(grid)):
            raise NotApplicable("trace needs a plain and delta-regular grid")
    if orientation is None:
        orientation = trace_orientation(grid) or "row"
    i, j = cell
    c = grid.at(i, j)
    if c >= 0 or not 0 <= r < -c:
        raise NotApplicable(f"({i}, {j}, r={r}) is not a marked point")
    prof = profile(grid)
    if orientation == "row":
        val = prof.a(i, j) + r
        run = [k for k in range(grid.cols) if grid.at(i, k) < 0 and 0 <= val - prof.a(i, k) < -grid.at(i, k)]
        here = j
    elif orientation == "column":
        val = prof.b(i, j) + r
        run = [h for h in range(grid.rows) if grid.at(h, j) < 0 and 0 <= val - prof.b(h, j) < -grid.at(h, j)]
        here = i
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    low = min(k for k in run if k <= here)
    high = max(k for k in run if k >= here)
    later = 0
    for k in run:
        if k > here:
            cap = -(grid.at(i, k) if orientation == "row" else grid.at(k, j))
            base = prof.a(i, k) if orientation == "row" else prof.b(k, j)
            later += sum(1 for s in range(cap) if base + s == val)
    return DeletionTrace((i, j), r, orientation, low, high, low + later, low + high - here)


def all_traces(grid, orientation=None):
    if not (is_plain(grid) and is_delta_regular(grid)):
        raise NotApplicable("trace needs a plain and delta-regular grid")
    if orientation is None:
        orientation = trace_orientation(grid) or "row"
    return [
        deletion_trace(grid, (mp.i, mp.j), mp.r, orientation, _checked=True)
        for mp in negative_locus(grid).marked
    ]


def trace_conserves(grid, orientation=None):
    """Applying every trace decrement to the staircase indicator gives back ``grid``."""
    x = acm_from_delta(grid)
    indicator = DeltaGrid(tuple(tuple(int((i, j) in x.points) for j in range(grid.cols)) for i in range(grid.rows)))
    return _bump(indicator, [t.target for t in all_traces(grid, orientation)]) == grid


@dataclass(frozen=True)
class SequenceStep:
    point: tuple
    trace: DeletionTrace
    tag: str  # separator condition found on the current scheme
    degree: tuple  # (q, p) on the current scheme
    changed: tuple  # cells where the oracle grid changed, with the change

    @property
    def ok(self):
        return self.changed == ((self.trace.target, -1),) and self.degree == self.trace.target


def deletion_sequence(grid, params=None, orientation=None):
    """Delete the marked points one by one from the staircase scheme.

    Row orientation deletes in decreasing ``(a, b)`` order, column
    orientation in decreasing ``(b, a)`` order.  After every deletion the
    oracle grid is compared to the previous one.
    """
    traces = all_traces(grid, orientation)
    orient = traces[0].orientation if traces else "row"
    prof = profile(grid)
    keyed = []
    for t in traces:
        a = prof.a(*t.cell) + t.r
        b = prof.b(*t.cell) + t.r
        keyed.append(((a, b) if orient == "row" else (b, a), (a, b), t))
    keyed.sort(key=lambda x: x[0], reverse=True)
    cur = acm_from_delta(grid)
    cur_delta = hilbert_delta(cur, params)
    steps = []
    for _, point, t in keyed:
        sd = separator_degree(cur, point, params)
        nxt = cur.without(point)
        nxt_delta = hilbert_delta(nxt, params)
        R = max(cur_delta.rows, nxt_delta.rows)
        C = max(cur_delta.cols, nxt_delta.cols)
        changed = tuple(
            ((i, j), nxt_delta.at(i, j) - cur_delta.at(i, j))
            for i in range(R)
            for j in range(C)
            if nxt_delta.at(i, j) != cur_delta.at(i, j)
        )
        steps.append(SequenceStep(point, t, sd.tag, sd.degree, changed))
        cur, cur_delta = nxt, nxt_delta
    return steps, cur_delta


@dataclass(frozen=True)
class PuncturedLineReport:
    n: int
    skip: tuple
    q: tuple  # points of X on each skipped column, ascending
    decrements: tuple  # the cells lowered by one
    config: GridConfig
    predicted: DeltaGrid
    actual: DeltaGrid = None

    @property
    def agrees(self):
        return None if self.actual is None else self.predicted == self.actual


def add_punctured_line(cfg, n, skip, params=None, check=True):
    """Add a new (1,0)-line meeting ``C_0..C_n`` except the skipped columns.

    The skipped columns are ordered by how many points of ``cfg`` they hold,
    ``q_1 <= ... <= q_r``; the predicted grid has a first row of ``n + 1``
    ones, then the old grid shifted down one row, lowered by one at
    ``(q_k, n - k + 1)``.
    """
    if not cfg.is_reduced():
        raise ValueError("configuration must be reduced (no empty lines)")
    b = cfg.cols - 1
    skip = tuple(int(s) for s in skip)
    if any(not 0 <= s <= b for s in skip) or len(set(skip)) != len(skip):
        raise BadSkipList(f"skip indices must be distinct and in 0..{b}")
    if n < b:
        raise HypothesesNotMet(f"n = {n} is smaller than b = {b}")
    counts = line_counts(cfg).per_col
    ordered = sorted(skip, key=lambda s: (counts[s], s))
    qs = tuple(counts[s] for s in ordered)
    r = len(ordered)
    old = hilbert_delta(cfg, params)
    if r >= 2:
        for k in range(2, r + 1):
            col = n - k + 2
            bad = [i for i in range(qs[k - 1], old.rows) if old.at(i, col) != 0]
            if bad:
                raise HypothesesNotMet(f"grid nonzero at ({bad[0]}, {col}) for k = {k}")
    dec = tuple((qs[k - 1], n - k + 1) for k in range(1, r + 1))
    R, C = old.rows + 1, max(old.cols, n + 1)
    shifted = [[1 if j <= n else 0 for j in range(C)]]
    shifted += [[old.at(i - 1, j) for j in range(C)] for i in range(1, R)]
    predicted = _bump(DeltaGrid(tuple(map(tuple, shifted))), list(dec))
    new_row = cfg.rows
    pts = set(cfg.points) | {(new_row, j) for j in range(n + 1) if j not in skip}
    w = GridConfig(cfg.rows + 1, max(cfg.cols, n + 1), frozenset(pts))
    wparams = None
    if params is not None:
        extra_u = max(params.u) + 1
        extra_v = list(params.v) + [max(params.v) + 1 + t for t in range(max(0, n + 1 - len(params.v)))]
        wparams = LineParams(tuple(params.u[: cfg.rows]) + (extra_u,), tuple(extra_v))
    actual = hilbert_delta(w, wparams) if check else None
    return PuncturedLineReport(n, tuple(ordered), qs, dec, w, predicted, actual)
