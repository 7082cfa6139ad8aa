"""Ground-truth Hilbert functions of grid configurations by exact ranks.

A point ``P_ij`` is placed at affine coordinates ``(u_i, v_j)``; the value of
the Hilbert function in bidegree ``(d, e)`` is the rank of the matrix that
evaluates the monomials ``u^s v^t`` (``s <= d``, ``t <= e``) at the points.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .errors import ParamMismatch, PointNotInConfig, StabilizationFailure
from .grid import line_counts
from .matrix import HilbertWindow, delta


@dataclass(frozen=True)
class LineParams:
    u: tuple
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(int(x) for x in self.u))
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))
        if len(set(self.u)) != len(self.u) or len(set(self.v)) != len(self.v):
            raise ParamMismatch("line parameters must be pairwise distinct")

    @classmethod
    def default(cls, rows, cols):
        return cls(tuple(range(1, rows + 1)), tuple(range(1, cols + 1)))

    @classmethod
    def random(cls, rows, cols, rng, bound=60):
        pool = range(-bound, bound + 1)
        return cls(tuple(rng.sample(pool, rows)), tuple(rng.sample(pool, cols)))


def _params_for(cfg, params):
    if params is None:
        return LineParams.default(cfg.rows, cfg.cols)
    if len(params.u) < cfg.rows or len(params.v) < cfg.cols:
        raise ParamMismatch(
            f"need {cfg.rows} row and {cfg.cols} column parameters, "
            f"got {len(params.u)} and {len(params.v)}"
        )
    return params


def monomials(deg):
    d, e = deg
    return [(s, t) for s in range(d + 1) for t in range(e + 1)]


def evaluation_matrix(cfg, params, deg, points=None):
    """Rows: points in sorted order; columns: monomials ``(s, t)`` in lex order."""
    params = _params_for(cfg, params)
    pts = cfg.sorted_points() if points is None else points
    mons = monomials(deg)
    return [[params.u[i] ** s * params.v[j] ** t for s, t in mons] for i, j in pts]


def hilbert_value(cfg, params, deg):
    if not cfg.points:
        return 0
    return exact.rank(evaluation_matrix(cfg, params, deg))


class _Evaluator:
    """Evaluation matrix up to a maximal bidegree, held once for many rank queries."""

    def __init__(self, cfg, params, dmax, emax):
        params = _params_for(cfg, params)
        self.pts = cfg.sorted_points()
        self.emax = emax
        rows = [
            [params.u[i] ** s * params.v[j] ** t for s in range(dmax + 1) for t in range(emax + 1)]
            for i, j in self.pts
        ]
        self.matrix = exact.IntMatrix(rows) if rows else None

    def value(self, d, e, rows=None):
        if self.matrix is None:
            return 0
        cols = [s * (self.emax + 1) + t for s in range(d + 1) for t in range(e + 1)]
        return self.matrix.rank(cols=cols, rows=rows)


def hilbert_window(cfg, params=None):
    """Hilbert window of extents ``(#rows + 1) x (#cols + 1)`` over occupied lines."""
    nr, nc = len(cfg.occupied_rows()), len(cfg.occupied_cols())
    if not cfg.points:
        return HilbertWindow(((0, 0), (0, 0)))
    ev = _Evaluator(cfg, params, nr, nc)
    m = tuple(tuple(ev.value(d, e) for e in range(nc + 1)) for d in range(nr + 1))
    try:
        w = HilbertWindow(m)
    except Exception as exc:
        raise StabilizationFailure(f"oracle window not stabilized: {exc}") from None
    if w.degree != len(cfg):
        raise StabilizationFailure(f"window corner {w.degree} != {len(cfg)} points")
    return w


def hilbert_delta(cfg, params=None):
    return delta(hilbert_window(cfg, params))


def kernel_dimension(cfg, params, deg):
    d, e = deg
    return (d + 1) * (e + 1) - hilbert_value(cfg, params, deg)


@dataclass(frozen=True)
class SeparatorForm:
    """Coefficients over the monomials ``u^s v^t`` of a form vanishing on all points but one."""

    degree: tuple
    coefficients: tuple  # Fractions, lex order of (s, t)
    h0_jump: int

    def terms(self):
        return [(m, c) for m, c in zip(monomials(self.degree), self.coefficients) if c]

    def evaluate(self, x, y):
        return sum(c * x**s * y**t for (s, t), c in self.terms())


def _check_point(cfg, point):
    point = tuple(point)
    if point not in cfg.points:
        raise PointNotInConfig(f"{point} is not a point of the configuration")
    return point


def find_separator(cfg, point, deg, params=None):
    """A separator for ``point`` in bidegree ``deg``, or None when there is none.

    Among the kernel basis vectors of the evaluation matrix of the remaining
    points, the first one not vanishing at ``point`` is returned, scaled so its
    first nonzero coefficient is 1.
    """
    point = _check_point(cfg, point)
    params = _params_for(cfg, params)
    rest = cfg.without(point)
    d, e = deg
    ncols = (d + 1) * (e + 1)
    rows = evaluation_matrix(rest, params, deg)
    basis = exact.kernel(rows, ncols=ncols)
    jump = basis.dimension - kernel_dimension(cfg, params, deg)
    at_p = evaluation_matrix(cfg, params, deg, points=[point])[0]
    for vec in basis.vectors:
        if sum(x * y for x, y in zip(vec, at_p)):
            lead = next(x for x in vec if x)
            coeffs = tuple(Fraction(x, lead) for x in vec)
            return SeparatorForm((d, e), coeffs, jump)
    return None


@dataclass(frozen=True)
class SeparatorDegree:
    q: int  # points left on the column through the point
    p: int  # points left on the row through the point
    conditions: tuple  # subset of (1, 2, 3)

    @property
    def degree(self):
        return (self.q, self.p)

    @property
    def tag(self):
        return "+".join(map(str, self.conditions)) if self.conditions else "none"


def separator_degree(cfg, point, params=None, window=None):
    """Candidate separator degree ``(q, p)`` and which sufficient condition holds.

    1: the row through the point meets every column; 2: the column meets
    every row; 3: ``p < b``, ``q < a`` and the difference grid of ``cfg``
    vanishes on ``{(i, j) >= (q + 1, p + 1)}``.
    """
    h, k = _check_point(cfg, point)
    counts = line_counts(cfg)
    p, q = counts.per_row[h] - 1, counts.per_col[k] - 1
    a = len(cfg.occupied_rows()) - 1
    b = len(cfg.occupied_cols()) - 1
    conds = []
    if p == b:
        conds.append(1)
    if q == a:
        conds.append(2)
    if p < b and q < a:
        dgrid = delta(window if window is not None else hilbert_window(cfg, params))
        if all(dgrid.at(i, j) == 0 for i in range(q + 1, dgrid.rows) for j in range(p + 1, dgrid.cols)):
            conds.append(3)
    return SeparatorDegree(q, p, tuple(conds))


def random_params(cfg, seed):
    return LineParams.random(cfg.rows, cfg.cols, random.Random(seed))
