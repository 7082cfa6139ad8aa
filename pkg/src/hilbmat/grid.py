"""Reduced point configurations on a grid of (1,0)-lines R_i and (0,1)-lines C_j."""

from collections import Counter
from dataclasses import dataclass

from .errors import FormatError, InternalInconsistency
from .matrix import negative_locus, require_admissible


@dataclass(frozen=True)
class GridConfig:
    """Points ``P_ij = R_i ∩ C_j`` on a ``rows x cols`` grid, each of multiplicity one."""

    rows: int
    cols: int
    points: frozenset

    def __post_init__(self):
        pts = frozenset((int(i), int(j)) for i, j in self.points)
        for i, j in pts:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"point ({i}, {j}) outside a {self.rows}x{self.cols} grid")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, points, rows=None, cols=None):
        points = list(points)
        if rows is None:
            rows = max((i for i, _ in points), default=-1) + 1
        if cols is None:
            cols = max((j for _, j in points), default=-1) + 1
        return cls(rows, cols, frozenset(points))

    def __len__(self):
        return len(self.points)

    def __contains__(self, cell):
        return tuple(cell) in self.points

    def sorted_points(self):
        return sorted(self.points)

    def without(self, cell):
        return GridConfig(self.rows, self.cols, self.points - {tuple(cell)})

    def occupied_rows(self):
        return sorted({i for i, _ in self.points})

    def occupied_cols(self):
        return sorted({j for _, j in self.points})

    def is_reduced(self):
        return len(self.occupied_rows()) == self.rows and len(self.occupied_cols()) == self.cols

    def reduced(self):
        """Drop empty lines and renumber the rest in order."""
        ri = {r: k for k, r in enumerate(self.occupied_rows())}
        ci = {c: k for k, c in enumerate(self.occupied_cols())}
        return GridConfig(len(ri), len(ci), frozenset((ri[i], ci[j]) for i, j in self.points))

    def is_staircase(self):
        """Rows are prefixes ``{0..len-1}`` with non-increasing lengths and no gaps."""
        lengths = []
        for i in range(self.rows):
            row = sorted(j for r, j in self.points if r == i)
            if row != list(range(len(row))):
                return False
            lengths.append(len(row))
        while lengths and lengths[-1] == 0:
            lengths.pop()
        return all(x >= y for x, y in zip(lengths, lengths[1:])) and 0 not in lengths


@dataclass(frozen=True)
class LineCounts:
    per_row: tuple
    per_col: tuple


def line_counts(cfg):
    rows, cols = [0] * cfg.rows, [0] * cfg.cols
    for i, j in cfg.points:
        rows[i] += 1
        cols[j] += 1
    return LineCounts(tuple(rows), tuple(cols))


def acm_from_delta(grid):
    """The staircase-type scheme with a point at every cell where ``c == 1``."""
    require_admissible(grid)
    pts = frozenset((i, j) for i in range(grid.rows) for j in range(grid.cols) if grid.at(i, j) == 1)
    return GridConfig(grid.rows, grid.cols, pts)


@dataclass(frozen=True)
class DeletedSet:
    cells: tuple  # in negative-locus order, repeats kept
    multiset: bool

    def as_set(self):
        return frozenset(self.cells)

    def counts(self):
        return Counter(self.cells)


def deleted_set(grid):
    locus = negative_locus(grid)
    cells = tuple(mp.cell for mp in locus.marked)
    return DeletedSet(cells, len(set(cells)) != len(cells))


@dataclass(frozen=True)
class AssociatedScheme:
    config: GridConfig
    acm: GridConfig
    deleted: DeletedSet

    @property
    def collision(self):
        """True when the deleted cells repeat, so fewer points are removed than marked."""
        return self.deleted.multiset


def associated_scheme(grid):
    """The ACM scheme of ``grid`` minus the marked cells (each distinct cell removed once)."""
    x = acm_from_delta(grid)
    dele = deleted_set(grid)
    missing = dele.as_set() - x.points
    if missing:
        raise InternalInconsistency(f"marked cells {sorted(missing)} are not in the ACM scheme")
    z = GridConfig(x.rows, x.cols, x.points - dele.as_set())
    return AssociatedScheme(z, x, dele)


def render_ascii(cfg):
    if not cfg.points:
        return f"(empty configuration on a {cfg.rows}x{cfg.cols} grid)\n"
    width = max(len(f"C{cfg.cols - 1}"), 2)
    lab = max(len(f"R{cfg.rows - 1}"), 2)
    lines = [" " * lab + " " + " ".join(f"C{j}".rjust(width) for j in range(cfg.cols))]
    for i in range(cfg.rows):
        cells = (("*" if (i, j) in cfg.points else ".").rjust(width) for j in range(cfg.cols))
        lines.append(f"R{i}".ljust(lab) + " " + " ".join(cells))
    return "\n".join(lines) + "\n"


CONFIG_HEADER = "grid-config v1"


def format_config(cfg):
    lines = [f"{CONFIG_HEADER} rows={cfg.rows} cols={cfg.cols}"]
    lines += [f"{i} {j}" for i, j in cfg.sorted_points()]
    return "\n".join(lines) + "\n"


def parse_config(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or not lines[0].startswith(CONFIG_HEADER):
        raise FormatError(f"expected header starting with {CONFIG_HEADER!r}")
    fields = dict(tok.split("=", 1) for tok in lines[0][len(CONFIG_HEADER):].split() if "=" in tok)
    try:
        rows, cols = int(fields["rows"]), int(fields["cols"])
        pts = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad config: {exc}") from None
    if any(len(p) != 2 for p in pts):
        raise FormatError("each point line must hold two integers")
    if len(set(pts)) != len(pts):
        raise FormatError("duplicate points")
    try:
        return GridConfig(rows, cols, frozenset(pts))
    except ValueError as exc:
        raise FormatError(str(exc)) from None
