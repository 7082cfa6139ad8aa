"""Exact integer linear algebra: rank and kernel.

The rank kernel comes from a compiled GMP extension when it was built and
falls back to pure Python otherwise.  Set ``HILBMAT_PURE=1`` to force the
fallback.
"""

import os

from ._pure import PureIntMatrix
from ._pure import bareiss_rank as pure_rank
from .kernel import KernelBasis, echelon, kernel

try:
    if os.environ.get("HILBMAT_PURE"):
        raise ImportError("pure backend requested")
    from ._bareiss import GmpIntMatrix as IntMatrix
    from ._bareiss import bareiss_rank as _rank
    BACKEND = "gmp"
except ImportError:
    IntMatrix = PureIntMatrix
    _rank = pure_rank
    BACKEND = "python"


def rank(rows):
    """Exact rank over the rationals of an integer matrix given as rows."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return _rank(rows)


__all__ = [
    "BACKEND",
    "IntMatrix",
    "KernelBasis",
    "PureIntMatrix",
    "echelon",
    "kernel",
    "pure_rank",
    "rank",
]
