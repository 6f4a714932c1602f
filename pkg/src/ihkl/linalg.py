"""Exact rational linear algebra: sparse matrices, rank, kernel.

Everything is over Fraction; no floating point anywhere. Two engines:

* ``rank_kernel`` -- row-major Gaussian elimination with the fixed
  "first non-zero entry in row-major scan" pivot rule, so kernel bases
  are deterministic and can be frozen in golden tests.
* ``sparse_rank`` -- column reduction in the style of boundary-matrix
  reduction (pivot = lowest non-zero row), much faster on the large,
  very sparse boundary matrices that dominate homology computations.
  Ranks agree with the row-major engine, only the internal order differs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)  # (i, j) -> Fraction, no zeros

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError("entry (%d,%d) out of range" % (i, j))
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, data) -> "RationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = Fraction(v)
                if v:
                    entries[(i, j)] = v
        return cls(rows, cols, entries)

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def col_dicts(self):
        out = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out


def rank_kernel(m: RationalMatrix):
    """Exact rank and a right-kernel basis.

    Deterministic: rows are processed top to bottom and each surviving
    row pivots on its first (leftmost) non-zero entry. Kernel vectors
    are returned ordered by ascending free column, each normalized to
    have coordinate 1 at its free column.
    """
    pivots = {}  # pivot column -> reduced row (dict col -> Fraction, pivot = 1)
    order = []  # pivot columns in elimination order
    for row in m.row_dicts():
        r = dict(row)
        while True:
            hit = min((c for c in r if c in pivots), default=None)
            if hit is None:
                break
            _axpy(r, pivots[hit], -r[hit])
        if r:
            c0 = min(r)
            inv = Fraction(1) / r[c0]
            pivots[c0] = {c: v * inv for c, v in r.items()}
            order.append(c0)
    rank = len(pivots)

    kernel = []
    free = [j for j in range(m.cols) if j not in pivots]
    for f in free:
        x = {f: Fraction(1)}
        for c in sorted(pivots, reverse=True):
            s = sum((pivots[c][j] * x[j] for j in pivots[c] if j != c and j in x),
                    Fraction(0))
            if s:
                x[c] = -s
        kernel.append(tuple(x.get(j, Fraction(0)) for j in range(m.cols)))
    return rank, kernel


def _axpy(target: dict, source: dict, factor: Fraction):
    """target += factor * source, in place, dropping zeros."""
    for c, v in source.items():
        nv = target.get(c, Fraction(0)) + factor * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


def sparse_rank(columns) -> int:
    """Rank of the matrix whose columns are the given dicts row->Fraction.

    Column-reduction: a column's pivot is its largest non-zero row index;
    columns colliding on a pivot are reduced against the earlier one.
    """
    low = {}  # pivot row -> reduced column
    rank = 0
    for col in columns:
        d = {r: Fraction(v) for r, v in col.items() if v}
        while d:
            r = max(d)
            if r in low:
                other = low[r]
                _axpy(d, other, -d[r] / other[r])
            else:
                low[r] = d
                rank += 1
                break
    return rank


def solve_in_span(basis_cols, target_cols, ncols_hint=None):
    """Express each target column in the span of the basis columns.

    All columns are dicts row->Fraction. Returns a list of coefficient
    dicts (basis index -> Fraction), one per target. Raises ValueError
    if a target is not in the span.
    """
    low = {}  # pivot row -> (reduced column, combination dict)
    for idx, col in enumerate(basis_cols):
        d = {r: Fraction(v) for r, v in col.items() if v}
        comb = {idx: Fraction(1)}
        while d:
            r = max(d)
            if r in low:
                other, ocomb = low[r]
                f = -d[r] / other[r]
                _axpy(d, other, f)
                _axpy(comb, ocomb, f)
            else:
                low[r] = (d, comb)
                break

    out = []
    for col in target_cols:
        d = {r: Fraction(v) for r, v in col.items() if v}
        comb = {}
        while d:
            r = max(d)
            if r not in low:
                raise ValueError("target column not in span of basis")
            other, ocomb = low[r]
            f = -d[r] / other[r]
            _axpy(d, other, f)
            _axpy(comb, ocomb, f)
        out.append({i: -v for i, v in comb.items()})
    return out
