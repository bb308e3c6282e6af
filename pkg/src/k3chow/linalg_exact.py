"""Exact rational linear algebra: dense matrices plus an incremental sparse echelon form."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _q(v):
    if type(v) is int:
        return v
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else v


class RationalMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if entries is None:
            entries = [0] * (rows * cols)
        if len(entries) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(_q(e) for e in entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows,
                              [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            out = []
            for i in range(self.rows):
                r = self.row(i)
                for j in range(other.cols):
                    out.append(sum((r[k] * other[k, j] for k in range(self.cols) if r[k]), 0))
            return RationalMatrix(self.rows, other.cols, out)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [_q(sum((a * b for a, b in zip(self.row(i), vec) if a), 0)) for i in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"RationalMatrix({self.to_rows()})"


def _bareiss_forward(rows: list, ncols: int) -> tuple:
    """Fraction-free forward elimination on an integer matrix; returns (rows, pivots)."""
    m = [list(r) for r in rows]
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            a = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c, ncols):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (piv * row_i[j] - a * row_r[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _integer_rows(m: RationalMatrix) -> list:
    """Scale each row by the lcm of its denominators."""
    from math import lcm
    out = []
    for i in range(m.rows):
        r = m.row(i)
        den = 1
        for x in r:
            if type(x) is not int:
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def rref(m: RationalMatrix) -> tuple:
    """Reduced row echelon form and the list of pivot columns."""
    rows, pivots = _bareiss_forward(_integer_rows(m), m.cols)
    # back substitution over the rationals
    red = [[Fraction(x) for x in r] for r in rows]
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        piv = red[k][c]
        red[k] = [x / piv for x in red[k]]
        for i in range(k):
            f = red[i][c]
            if f:
                red[i] = [a - f * b for a, b in zip(red[i], red[k])]
    n = len(red)
    entries = [x for r in red for x in r] + [0] * ((m.rows - n) * m.cols)
    return RationalMatrix(m.rows, m.cols, entries), pivots


def rank(m: RationalMatrix) -> int:
    _, pivots = _bareiss_forward(_integer_rows(m), m.cols)
    return len(pivots)


def nullspace(m: RationalMatrix) -> list:
    """Basis of {x : m x = 0}, one vector per free column."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for k, c in enumerate(pivots):
            v[c] = _q(-red[k, f])
        basis.append(v)
    return basis


def solve(m: RationalMatrix, b: Sequence) -> list | None:
    """One solution of m x = b, or None when inconsistent."""
    aug = RationalMatrix(m.rows, m.cols + 1,
                         [x for i in range(m.rows) for x in m.row(i) + [b[i]]])
    red, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [0] * m.cols
    for k, c in enumerate(pivots):
        x[c] = _q(red[k, m.cols])
    return x


def row_space_contains(m: RationalMatrix, v: Sequence) -> bool:
    return solve(m.transpose(), v) is not None


class SparseEchelon:
    """Incrementally maintained echelon basis of sparse rows over Q.

    Rows are dicts column -> value. Pivot of a row is its smallest column index;
    each stored row is normalized to pivot value 1 and reduced against earlier
    pivots on insertion.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def full(self) -> bool:
        return len(self.pivots) >= self.ncols

    def reduce(self, row: dict) -> dict:
        row = {k: v for k, v in row.items() if v}
        while row:
            # smallest column that is a pivot
            cands = [c for c in row if c in self.pivots]
            if not cands:
                break
            c = min(cands)
            f = row[c]
            for k, v in self.pivots[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = _q(nv)
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        f = row[c]
        self.pivots[c] = {k: _q(Fraction(v) / f) for k, v in row.items()}
        return True

    def normal_form(self, row: dict) -> dict:
        """Fully reduce: the result is supported on non-pivot columns only."""
        row = {k: v for k, v in row.items() if v}
        out = {}
        while row:
            c = min(row)
            f = row.pop(c)
            if c in self.pivots:
                for k, v in self.pivots[c].items():
                    if k == c:
                        continue
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = _q(nv)
                    else:
                        row.pop(k, None)
            else:
                out[c] = f
        return out

    def free_columns(self) -> list:
        return [c for c in range(self.ncols) if c not in self.pivots]
