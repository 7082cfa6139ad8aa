"""Right null space of an integer matrix, returned as primitive integer vectors."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class KernelBasis:
    ncols: int
    vectors: tuple  # tuple of tuples of int

    @property
    def dimension(self):
        return len(self.vectors)


def echelon(rows):
    """Fraction-free row echelon form.

    Returns ``(echelon_rows, pivot_columns)``; the echelon rows are integer
    and only the first ``len(pivot_columns)`` of them are nonzero.
    """
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    m = len(a[0]) if n else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(m):
        if r >= n:
            break
        p = next((i for i in range(r, n) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        pr = a[r]
        for i in range(r + 1, n):
            f = a[i][c]
            row = a[i]
            for j in range(c + 1, m):
                row[j] = (piv * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _primitive(vec):
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    first = next((x for x in ints if x), 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def kernel(rows, ncols=None):
    """Basis of ``{v : A v = 0}``, one vector per free column.

    The vector for free column ``f`` has a 1-equivalent entry at ``f`` and
    zeros at the other free columns, then is scaled to a primitive integer
    vector with positive leading entry.
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    ech, pivots = echelon(rows) if rows else ([], [])
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            row = ech[k]
            s = sum((row[j] * x[j] for j in range(pc + 1, ncols) if row[j]), Fraction(0))
            x[pc] = -s / row[pc]
        basis.append(_primitive(x))
    return KernelBasis(ncols, tuple(basis))
