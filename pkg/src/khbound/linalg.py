"""Sparse exact-rational matrices sized for chain-complex differentials.

All arithmetic is exact (ints promoted to Fraction on demand); there is no
floating point anywhere.  Rank uses Gaussian elimination with a cheap
Markowitz-style pivot rule (fewest-entries column, then fewest-entries row,
lowest index on ties) since cube differentials are extremely sparse and
fill-in dominates runtime.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator

from .errors import DiagramError

Entry = tuple[int, int, Fraction]


class SparseMatrix:
    """Immutable-by-convention sparse matrix over Q."""

    __slots__ = ("n_rows", "n_cols", "rows")

    def __init__(self, n_rows: int, n_cols: int, entries: Iterable[tuple[int, int, int | Fraction]] = ()):
        if n_rows < 0 or n_cols < 0:
            raise DiagramError("matrix dimensions must be non-negative")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.rows: dict[int, dict[int, Fraction]] = {}
        for r, c, v in entries:
            if not (0 <= r < n_rows and 0 <= c < n_cols):
                raise DiagramError(f"entry ({r},{c}) out of bounds for {n_rows}x{n_cols}")
            v = Fraction(v)
            if v == 0:
                continue
            row = self.rows.setdefault(r, {})
            w = row.get(c, Fraction(0)) + v
            if w:
                row[c] = w
            else:
                del row[c]
        for r in [r for r, row in self.rows.items() if not row]:
            del self.rows[r]

    @classmethod
    def from_dense(cls, rows: list[list[int | Fraction]]) -> "SparseMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        return cls(n_rows, n_cols, ((i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r) if v))

    def entries(self) -> Iterator[Entry]:
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def get(self, r: int, c: int) -> Fraction:
        return self.rows.get(r, {}).get(c, Fraction(0))

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.n_cols, self.n_rows, ((c, r, v) for r, c, v in self.entries()))

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.n_cols for _ in range(self.n_rows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and (self.n_rows, self.n_cols) == (other.n_rows, other.n_cols)
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"SparseMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz()})"


class _Eliminator:
    """Shared worker for rank and pivot elimination."""

    def __init__(self, m: SparseMatrix):
        self.rows = {r: dict(row) for r, row in m.rows.items()}
        self.cols: dict[int, set[int]] = {}
        for r, row in self.rows.items():
            for c in row:
                self.cols.setdefault(c, set()).add(r)

    def pick_pivot(self) -> tuple[int, int] | None:
        if not self.cols:
            return None
        c = min(self.cols, key=lambda c: (len(self.cols[c]), c))
        r = min(self.cols[c], key=lambda r: (len(self.rows[r]), r))
        return r, c

    def eliminate(self, pr: int, pc: int) -> None:
        prow = self.rows.pop(pr)
        pval = prow.pop(pc)
        self.cols[pc].discard(pr)
        for c in prow:
            self.cols[c].discard(pr)
        targets = list(self.cols.pop(pc, ()))
        for r in targets:
            row = self.rows[r]
            factor = row.pop(pc) / pval
            for c, v in prow.items():
                w = row.get(c)
                if w is None:
                    row[c] = -factor * v
                    self.cols.setdefault(c, set()).add(r)
                else:
                    w = w - factor * v
                    if w:
                        row[c] = w
                    else:
                        del row[c]
                        self.cols[c].discard(r)
            if not row:
                del self.rows[r]
        # drop emptied column sets
        for c in list(prow):
            if c in self.cols and not self.cols[c]:
                del self.cols[c]


def rank(m: SparseMatrix) -> int:
    """Exact rank over Q."""
    elim = _Eliminator(m)
    rk = 0
    while True:
        piv = elim.pick_pivot()
        if piv is None:
            return rk
        elim.eliminate(*piv)
        rk += 1


def eliminate_pivot(m: SparseMatrix, row: int, col: int) -> SparseMatrix:
    """Schur complement after eliminating the pivot at (row, col); the result
    has one fewer row and column and rank exactly one less."""
    pval = m.get(row, col)
    if pval == 0:
        raise DiagramError(f"zero pivot at ({row},{col})")
    elim = _Eliminator(m)
    elim.eliminate(row, col)
    rmap = {r: i for i, r in enumerate(sorted(set(range(m.n_rows)) - {row}))}
    cmap = {c: j for j, c in enumerate(sorted(set(range(m.n_cols)) - {col}))}
    entries = [
        (rmap[r], cmap[c], v)
        for r, rw in elim.rows.items()
        for c, v in rw.items()
    ]
    return SparseMatrix(m.n_rows - 1, m.n_cols - 1, entries)
