"""Integer-matrix calculus for bigraded Hilbert functions.

Index convention: the first index ``i`` is the row and the second index
``j`` is the column, so ``c[1][6]`` is row 1, column 6.  Entries outside a
stored grid are 0 for negative indices.  Beyond the stored extent a Hilbert
window repeats its last row/column, and a difference grid is 0.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import (
    AccumulationNegative,
    EmptyScheme,
    FormatError,
    NotAdmissible,
    StabilizationMissing,
)


@dataclass(frozen=True, order=False)
class BiDegree:
    i: int
    j: int

    def __post_init__(self):
        if self.i < 0 or self.j < 0:
            raise ValueError(f"bidegree must be non-negative, got ({self.i}, {self.j})")

    def __ge__(self, other):
        return self.i >= other.i and self.j >= other.j

    def __le__(self, other):
        return self.i <= other.i and self.j <= other.j

    def __iter__(self):
        yield self.i
        yield self.j


def _freeze(rows):
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("grid rows have different lengths")
    return rows


@dataclass(frozen=True)
class HilbertWindow:
    """Finite window ``m[i][j]`` of a Hilbert matrix, stabilized inside the window."""

    entries: tuple

    def __post_init__(self):
        rows = _freeze(self.entries)
        object.__setattr__(self, "entries", rows)
        if len(rows) < 2 or len(rows[0]) < 2:
            raise StabilizationMissing("a window needs at least two rows and two columns")
        if rows[-1] != rows[-2]:
            raise StabilizationMissing("last row differs from the row above it")
        if any(r[-1] != r[-2] for r in rows):
            raise StabilizationMissing("last column differs from the column before it")
        if any(x < 0 for r in rows for x in r):
            raise ValueError("Hilbert window entries must be non-negative")
        if rows[0][0] not in (0, 1):
            raise ValueError("m[0][0] must be 0 or 1")

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    @property
    def degree(self):
        return self.entries[-1][-1]

    def at(self, i, j):
        if i < 0 or j < 0:
            return 0
        return self.entries[min(i, self.rows - 1)][min(j, self.cols - 1)]

    def extended(self, rows, cols):
        """The same Hilbert function on a larger window."""
        rows, cols = max(rows, self.rows), max(cols, self.cols)
        return HilbertWindow(tuple(tuple(self.at(i, j) for j in range(cols)) for i in range(rows)))

    def tolist(self):
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class DeltaGrid:
    """First difference ``c[i][j]``; trailing zero rows and columns are stripped."""

    entries: tuple

    def __post_init__(self):
        rows = [list(r) for r in _freeze(self.entries)]
        while rows and not any(rows[-1]):
            rows.pop()
        if rows:
            width = len(rows[0])
            while width and not any(r[width - 1] for r in rows):
                width -= 1
            rows = [r[:width] for r in rows]
        object.__setattr__(self, "entries", tuple(tuple(r) for r in rows))

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0]) if self.entries else 0

    @property
    def size(self):
        """``(a, b)``: the largest row and column index with a nonzero entry; None if zero."""
        if not self.entries:
            return None
        return (self.rows - 1, self.cols - 1)

    def at(self, i, j):
        if 0 <= i < self.rows and 0 <= j < self.cols:
            return self.entries[i][j]
        return 0

    def tolist(self):
        return [list(r) for r in self.entries]


def delta(window):
    m = window.at
    return DeltaGrid(
        tuple(
            tuple(m(i, j) - m(i - 1, j) - m(i, j - 1) + m(i - 1, j - 1) for j in range(window.cols))
            for i in range(window.rows)
        )
    )


def accumulate(grid):
    """Inverse of :func:`delta`: ``m[i][j]`` is the sum of ``c`` over the lower-left box."""
    rows, cols = max(grid.rows, 1) + 1, max(grid.cols, 1) + 1
    m = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        acc = 0
        for j in range(cols):
            acc += grid.at(i, j)
            m[i][j] = acc + (m[i - 1][j] if i else 0)
            if m[i][j] < 0:
                raise AccumulationNegative(f"partial sum at ({i}, {j}) is {m[i][j]}")
    return HilbertWindow(tuple(tuple(r) for r in m))


@dataclass(frozen=True)
class DeltaProfile:
    """Column partial sums ``a`` and row partial sums ``b`` of a difference grid."""

    a_grid: tuple
    b_grid: tuple

    @property
    def rows(self):
        return len(self.a_grid)

    @property
    def cols(self):
        return len(self.a_grid[0]) if self.a_grid else 0

    def a(self, i, j):
        if i < 0 or j < 0 or j >= self.cols or not self.rows:
            return 0
        return self.a_grid[min(i, self.rows - 1)][j]

    def b(self, i, j):
        if i < 0 or j < 0 or i >= self.rows or not self.cols:
            return 0
        return self.b_grid[i][min(j, self.cols - 1)]


def profile(grid):
    a = [[0] * grid.cols for _ in range(grid.rows)]
    b = [[0] * grid.cols for _ in range(grid.rows)]
    for i in range(grid.rows):
        for j in range(grid.cols):
            c = grid.at(i, j)
            a[i][j] = c + (a[i - 1][j] if i else 0)
            b[i][j] = c + (b[i][j - 1] if j else 0)
    return DeltaProfile(tuple(map(tuple, a)), tuple(map(tuple, b)))


@dataclass(frozen=True)
class AdmissibilityReport:
    bounded: tuple = ()
    upset: tuple = ()
    margins: tuple = ()

    @property
    def admissible(self):
        return not (self.bounded or self.upset or self.margins)

    def __bool__(self):
        return self.admissible


def is_admissible(grid):
    """Check the three admissibility clauses and list every failing position.

    ``bounded``: cells with ``c > 1``.  ``upset``: cells ``(i, j)`` with
    ``c <= 0`` that have a 1 somewhere in ``{(r, s) >= (i, j)}``.
    ``margins``: positions where a margin is negative or grows, recorded as
    ``("a"|"b", i, j)``.  The margin scan runs one row and column past the
    support, where the margins are constant.
    """
    R, C = grid.rows, grid.cols
    bounded = tuple((i, j) for i in range(R) for j in range(C) if grid.at(i, j) > 1)

    # has_one[i][j]: a 1 occurs in the up-set of (i, j)
    has_one = [[False] * (C + 1) for _ in range(R + 1)]
    for i in range(R - 1, -1, -1):
        for j in range(C - 1, -1, -1):
            has_one[i][j] = grid.at(i, j) == 1 or has_one[i + 1][j] or has_one[i][j + 1]
    upset = tuple(
        (i, j)
        for i in range(R)
        for j in range(C)
        if grid.at(i, j) <= 0 and (has_one[i + 1][j] or has_one[i][j + 1])
    )

    prof = profile(grid)
    margins = []
    for i in range(R + 1):
        for j in range(C + 1):
            a, b = prof.a(i, j), prof.b(i, j)
            if a < 0 or (j > 0 and a > prof.a(i, j - 1)):
                margins.append(("a", i, j))
            if b < 0 or (i > 0 and b > prof.b(i - 1, j)):
                margins.append(("b", i, j))
    return AdmissibilityReport(bounded, upset, tuple(margins))


def require_admissible(grid):
    rep = is_admissible(grid)
    if not rep.admissible:
        raise NotAdmissible(
            f"not admissible: bounded={list(rep.bounded)} upset={list(rep.upset)[:5]} "
            f"margins={list(rep.margins)[:5]}"
        )
    return rep


class NegativeCell(NamedTuple):
    i: int
    j: int
    c: int

    @property
    def interval(self):
        return range(-self.c)


class MarkedPoint(NamedTuple):
    """One element ``(i, j, r)`` of the negative locus with its pair ``(a_ij + r, b_ij + r)``."""

    i: int
    j: int
    r: int
    a: int
    b: int

    @property
    def cell(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class NegativeLocus:
    cells: tuple
    marked: tuple = field(default=())

    def __iter__(self):
        return iter(self.cells)

    def __len__(self):
        return len(self.cells)

    @property
    def positions(self):
        return [(c.i, c.j) for c in self.cells]


def negative_locus(grid, _checked=False):
    """Cells with ``c < 0`` ordered by row, then by decreasing column, with their marked pairs."""
    if not _checked:
        require_admissible(grid)
    prof = profile(grid)
    cells = sorted(
        (NegativeCell(i, j, grid.at(i, j)) for i in range(grid.rows) for j in range(grid.cols) if grid.at(i, j) < 0),
        key=lambda c: (c.i, -c.j),
    )
    marked = tuple(
        MarkedPoint(c.i, c.j, r, prof.a(c.i, c.j) + r, prof.b(c.i, c.j) + r)
        for c in cells
        for r in c.interval
    )
    return NegativeLocus(tuple(cells), marked)


@dataclass(frozen=True)
class PlainReport:
    plain: bool
    pairs: tuple
    collisions: tuple  # (pair, marked points sharing it)

    def __bool__(self):
        return self.plain


def is_plain(grid):
    locus = negative_locus(grid)
    by_pair = {}
    for mp in locus.marked:
        by_pair.setdefault(mp.cell, []).append(mp)
    collisions = tuple((pair, tuple(mps)) for pair, mps in by_pair.items() if len(mps) > 1)
    return PlainReport(not collisions, tuple(mp.cell for mp in locus.marked), collisions)


@dataclass(frozen=True)
class DeltaRegularReport:
    regular: bool
    witnesses: tuple  # (clause, first marked point, second marked point)

    def __bool__(self):
        return self.regular


def is_delta_regular(grid):
    """Pairwise form of the chain conditions.

    For two marked points with equal ``a``-value, different rows and
    increasing columns, the ``b``-values must not decrease; symmetrically for
    equal ``b``-values, different columns and increasing rows.
    """
    marked = negative_locus(grid).marked
    witnesses = []
    for p in marked:
        for q in marked:
            if p.a == q.a and p.i != q.i and p.j < q.j and p.b > q.b:
                witnesses.append((1, p, q))
            if p.b == q.b and p.j != q.j and p.i < q.i and p.a > q.a:
                witnesses.append((2, p, q))
    return DeltaRegularReport(not witnesses, tuple(witnesses))


@dataclass(frozen=True)
class ConditionReport:
    holds: bool
    witnesses: tuple  # ((i, j), lhs, rhs) with lhs < rhs

    def __bool__(self):
        return self.holds


def condition1(grid):
    """``a[i][j] >= a[i-1][j+1]`` everywhere."""
    require_admissible(grid)
    prof = profile(grid)
    wit = tuple(
        ((i, j), prof.a(i, j), prof.a(i - 1, j + 1))
        for i in range(grid.rows + 1)
        for j in range(grid.cols + 1)
        if prof.a(i, j) < prof.a(i - 1, j + 1)
    )
    return ConditionReport(not wit, wit)


def condition2(grid):
    """``b[i][j] >= b[i+1][j-1]`` everywhere."""
    require_admissible(grid)
    prof = profile(grid)
    wit = tuple(
        ((i, j), prof.b(i, j), prof.b(i + 1, j - 1))
        for i in range(grid.rows + 1)
        for j in range(grid.cols + 1)
        if prof.b(i, j) < prof.b(i + 1, j - 1)
    )
    return ConditionReport(not wit, wit)


@dataclass(frozen=True)
class LineStats:
    row_dist: dict  # points per (1,0)-line -> number of such lines
    col_dist: dict  # points per (0,1)-line -> number of such lines
    i0: int
    j0: int


def line_stats(window):
    if window.degree == 0:
        raise EmptyScheme("the zero Hilbert matrix has no lines")
    m = window.at
    i0 = next(t for t in range(window.rows) if m(t, 0) == m(t + 1, 0))
    j0 = next(t for t in range(window.cols) if m(0, t) == m(0, t + 1))

    def a(i, j):
        return m(i, j) - m(i, j - 1)

    def b(i, j):
        return m(i, j) - m(i - 1, j)

    row_dist = {}
    for j in range(window.cols):
        n = a(i0, j) - a(i0, j + 1)
        if n:
            row_dist[j + 1] = n
    col_dist = {}
    for i in range(window.rows):
        n = b(i, j0) - b(i + 1, j0)
        if n:
            col_dist[i + 1] = n
    return LineStats(row_dist, col_dist, i0, j0)


@dataclass(frozen=True)
class LemmaReport:
    results: dict  # name -> (passed, counterexample or None)

    @property
    def passed(self):
        return all(ok for ok, _ in self.results.values())

    def __bool__(self):
        return self.passed


def check_structure_lemmas(grid):
    """Exhaustively test the structural facts every admissible grid satisfies.

    Each entry of the report is ``(passed, first counterexample)``.  A failure
    means a bug somewhere upstream, since these facts are consequences of
    admissibility.  Indices range one row/column past the support, which
    covers every case because margins are constant beyond it.
    """
    require_admissible(grid)
    prof = profile(grid)
    a, b, c = prof.a, prof.b, grid.at
    R, C = grid.rows, grid.cols
    T = [(cell.i, cell.j) for cell in negative_locus(grid, _checked=True)]
    nonpos = [(i, j) for i in range(R + 1) for j in range(C + 1) if c(i, j) <= 0]
    results = {}

    def first(it):
        return next(iter(it), None)

    # negative cell vs a non-positive cell further left: row order
    results["row_order"] = first(
        (i1, j1, r, i2, j2)
        for (i1, j1) in T
        for (i2, j2) in nonpos
        if j1 > j2
        for r in range(-c(i1, j1))
        if a(i1, j1) + r >= a(i2, j2) and not i1 <= i2
    )
    results["col_order"] = first(
        (i1, j1, r, i2, j2)
        for (i1, j1) in T
        for (i2, j2) in nonpos
        if i1 > i2
        for r in range(-c(i1, j1))
        if b(i1, j1) + r >= b(i2, j2) and not j1 <= j2
    )

    def col_sandwich_ok(i1, j1, r, i2, j2):
        t = a(i1, j1) + r
        return any(
            c(i, j) < 0 and t + c(i, j) + 1 <= a(i, j) <= t
            for j in range(j2 + 1, j1)
            for i in range(i2 + 1)
        )

    def row_sandwich_ok(i1, j1, r, i2, j2):
        t = b(i1, j1) + r
        return any(
            c(i, j) < 0 and t + c(i, j) + 1 <= b(i, j) <= t
            for i in range(i2 + 1, i1)
            for j in range(j2 + 1)
        )

    results["col_sandwich"] = first(
        (i1, j1, r, i2, j2)
        for (i1, j1) in T
        for (i2, j2) in nonpos
        if j2 < j1 - 1
        for r in range(-c(i1, j1))
        if a(i1, j1) + r >= a(i2, j2) and not col_sandwich_ok(i1, j1, r, i2, j2)
    )
    results["row_sandwich"] = first(
        (i1, j1, r, i2, j2)
        for (i1, j1) in T
        for (i2, j2) in nonpos
        if i2 < i1 - 1
        for r in range(-c(i1, j1))
        if b(i1, j1) + r >= b(i2, j2) and not row_sandwich_ok(i1, j1, r, i2, j2)
    )
    results["col_strict"] = first(
        (i1, j1, r, i2, s)
        for (i1, j1) in T
        for (i2, j2) in T
        if j2 == j1 and i2 < i1
        for r in range(-c(i1, j1))
        for s in range(-c(i2, j1))
        if not a(i2, j1) + s > a(i1, j1) + r
    )
    results["row_strict"] = first(
        (i1, j1, r, j2, s)
        for (i1, j1) in T
        for (i2, j2) in T
        if i2 == i1 and j2 < j1
        for r in range(-c(i1, j1))
        for s in range(-c(i1, j2))
        if not b(i1, j2) + s > b(i1, j1) + r
    )

    row_len = [sum(1 for j in range(C) if c(i, j) == 1) for i in range(R + 1)]
    col_len = [sum(1 for i in range(R) if c(i, j) == 1) for j in range(C + 1)]
    bad = None
    for p in sorted({a(i, j) + r for (i, j) in T for r in range(-c(i, j))}):
        k = max(j for (i, j) in T if p + c(i, j) + 1 <= a(i, j) <= p)
        if not (0 <= p <= R - 1 and row_len[p] == k + 1):
            bad = (p, k)
            break
    results["row_length"] = bad
    bad = None
    for q in sorted({b(i, j) + r for (i, j) in T for r in range(-c(i, j))}):
        h = max(i for (i, j) in T if q + c(i, j) + 1 <= b(i, j) <= q)
        if not (0 <= q <= C - 1 and col_len[q] == h + 1):
            bad = (q, h)
            break
    results["col_length"] = bad
    return LemmaReport({k: (v is None, v) for k, v in results.items()})


# --- text format -----------------------------------------------------------

MATRIX_HEADER = "hilbert-matrix v1"


def format_matrix(obj):
    """Serialize a HilbertWindow (kind=M) or DeltaGrid (kind=delta)."""
    if isinstance(obj, HilbertWindow):
        kind, rows = "M", obj.tolist()
    else:
        kind, rows = "delta", obj.tolist() or [[0]]
    lines = [f"{MATRIX_HEADER} rows={len(rows)} cols={len(rows[0])} kind={kind}"]
    lines += [" ".join(str(x) for x in r) for r in rows]
    return "\n".join(lines) + "\n"


def _parse_header(line, magic, keys):
    if not line.startswith(magic):
        raise FormatError(f"expected header starting with {magic!r}, got {line!r}")
    fields = {}
    for tok in line[len(magic):].split():
        if "=" not in tok:
            raise FormatError(f"bad header field {tok!r}")
        k, v = tok.split("=", 1)
        fields[k] = v
    missing = [k for k in keys if k not in fields]
    if missing:
        raise FormatError(f"header missing {missing}")
    return fields


def parse_matrix(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise FormatError("empty matrix file")
    h = _parse_header(lines[0], MATRIX_HEADER, ("rows", "cols", "kind"))
    try:
        R, C = int(h["rows"]), int(h["cols"])
        body = [[int(x) for x in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if len(body) != R or any(len(r) != C for r in body):
        raise FormatError(f"expected {R} rows of {C} integers")
    if h["kind"] == "M":
        return HilbertWindow(tuple(map(tuple, body)))
    if h["kind"] == "delta":
        return DeltaGrid(tuple(map(tuple, body)))
    raise FormatError(f"unknown kind {h['kind']!r}")


def as_delta(obj):
    return delta(obj) if isinstance(obj, HilbertWindow) else obj


def marked_multiset(grid):
    return Counter(mp.cell for mp in negative_locus(grid).marked)
