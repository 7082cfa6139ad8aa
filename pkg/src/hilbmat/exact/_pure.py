"""Pure-Python fraction-free elimination (fallback for the compiled kernel)."""


def bareiss_rank(rows):
    """Exact rank of an integer matrix given as a list of rows.

    Rows are consumed column by column; after a pivot in column c only the
    trailing entries are kept, so each row shrinks as elimination proceeds.
    Every entry stays an integer minor of the input, so the divisions by the
    previous pivot are exact.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    prev = 1
    rank = 0
    for _ in range(ncols):
        if not work:
            break
        for p, row in enumerate(work):
            if row[0]:
                break
        else:
            work = [row[1:] for row in work]
            continue
        pivot_row = work.pop(p)
        piv = pivot_row[0]
        tail = pivot_row[1:]
        nxt = []
        for row in work:
            f = row[0]
            if f:
                new = [(piv * x - f * y) // prev for x, y in zip(row[1:], tail)]
            elif piv == prev:
                new = row[1:]
            else:
                new = [piv * x // prev for x in row[1:]]
            if any(new):
                nxt.append(new)
        work = nxt
        prev = piv
        rank += 1
    return rank


class PureIntMatrix:
    """Integer matrix with rank queries on column subsets."""

    backend = "python"

    def __init__(self, rows):
        self._rows = [[int(x) for x in r] for r in rows]
        self.nrows = len(self._rows)
        self.ncols = len(self._rows[0]) if self._rows else 0
        for r in self._rows:
            if len(r) != self.ncols:
                raise ValueError("matrix rows have different lengths")

    def rank(self, cols=None, rows=None):
        src = self._rows if rows is None else [self._rows[i] for i in rows]
        if cols is None:
            return bareiss_rank(src)
        return bareiss_rank([[r[c] for c in cols] for r in src])

    def tolist(self):
        return [list(r) for r in self._rows]
