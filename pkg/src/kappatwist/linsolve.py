"""Exact dense linear algebra over the Gaussian rationals.

Gaussian elimination with deterministic pivoting (first nonzero entry in
column order), returning either a unique solution, a particular solution
plus a nullspace basis, or an infeasibility verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import GR_ONE, GR_ZERO, GaussianRational, UsageError


def _coerce(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    raise UsageError(f"matrix entries must be exact rationals, got {value!r}")


class ExactMatrix:
    """Dense rows x cols matrix of GaussianRational entries."""

    def __init__(self, rows):
        data = [[_coerce(v) for v in row] for row in rows]
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise UsageError("ragged matrix rows")
        self.rows = data

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols})"


@dataclass
class SolutionSpace:
    """Solution set of A x = b.

    status is one of 'unique', 'parametric', 'infeasible'.  For solvable
    systems `particular` is an exact solution and `nullspace` a basis of
    the homogeneous solutions (empty when unique).
    """

    status: str
    particular: list[GaussianRational] | None
    nullspace: list[list[GaussianRational]] = field(default_factory=list)
    rank: int = 0
    free_columns: list[int] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.nullspace)


def solve(matrix, rhs) -> SolutionSpace:
    """Solve A x = b exactly; accepts ExactMatrix or nested sequences."""
    a = matrix if isinstance(matrix, ExactMatrix) else ExactMatrix(matrix)
    b = [_coerce(v) for v in rhs]
    if len(b) != a.nrows:
        raise UsageError("right-hand side length does not match row count")
    n, m = a.nrows, a.ncols
    # Augmented working copy.
    rows = [list(row) + [b[i]] for i, row in enumerate(a.rows)]

    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(m):
        pivot_row = None
        for i in range(r, n):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [
                    vi - factor * vr for vi, vr in zip(rows[i], rows[r])
                ]
        pivots.append((r, c))
        r += 1
        if r == n:
            break
    rank = len(pivots)

    for i in range(rank, n):
        if rows[i][m]:
            return SolutionSpace("infeasible", None, rank=rank)

    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(m) if c not in pivot_cols]

    particular = [GR_ZERO] * m
    for row_i, col in pivots:
        particular[col] = rows[row_i][m]

    nullspace = []
    for fc in free_cols:
        vec = [GR_ZERO] * m
        vec[fc] = GR_ONE
        for row_i, col in pivots:
            vec[col] = -rows[row_i][fc]
        nullspace.append(vec)

    status = "unique" if not free_cols else "parametric"
    return SolutionSpace(status, particular, nullspace, rank, free_cols)
