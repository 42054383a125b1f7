"""Exact row reduction over a cyclotomic field (sparse rows as dicts)."""

from __future__ import annotations

from typing import Iterable, Optional

from .scalars import CycScalar, ScalarContext


class EchelonBasis:
    """Incrementally maintained reduced row-echelon basis of a row space.

    Columns are compared by a fixed `colkey`; the pivot of a row is its
    smallest column under that key.
    """

    def __init__(self, ctx: ScalarContext, colkey=None):
        self.ctx = ctx
        self.colkey = colkey or (lambda c: c)
        self.rows: dict = {}  # pivot column -> row dict (pivot coefficient 1)

    def __len__(self) -> int:
        return len(self.rows)

    def _pivot(self, row: dict):
        return min(row, key=self.colkey)

    def reduce(self, row: dict) -> dict:
        """Remainder of row modulo the current basis (pivot columns eliminated)."""
        row = {c: v for c, v in row.items() if v}
        # the basis is fully reduced, so one pass over the pivots in row suffices
        for col in [c for c in row if c in self.rows]:
            v = row.get(col)
            if not v:
                continue
            for c2, w in self.rows[col].items():
                nv = row.get(c2, self.ctx.zero) - v * w
                if nv:
                    row[c2] = nv
                else:
                    row.pop(c2, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True when the rank grew."""
        r = self.reduce(row)
        if not r:
            return False
        piv = self._pivot(r)
        inv = r[piv].inverse()
        r = {c: v * inv for c, v in r.items()}
        # keep the basis fully reduced
        for p, other in self.rows.items():
            v = other.get(piv)
            if v:
                for c2, w in r.items():
                    nv = other.get(c2, self.ctx.zero) - v * w
                    if nv:
                        other[c2] = nv
                    else:
                        other.pop(c2, None)
        self.rows[piv] = r
        return True

    def pivots(self) -> list:
        return sorted(self.rows, key=self.colkey)


def rank(rows: Iterable[dict], ctx: ScalarContext) -> int:
    eb = EchelonBasis(ctx)
    for r in rows:
        eb.add(r)
    return len(eb)


def solve_square(matrix: list[list[CycScalar]], rhs: list[CycScalar], ctx: ScalarContext) -> Optional[list[CycScalar]]:
    """Solve M x = b for square invertible M by Gauss-Jordan; None if singular."""
    n = len(matrix)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def inverse_matrix(matrix: list[list[CycScalar]], ctx: ScalarContext) -> Optional[list[list[CycScalar]]]:
    n = len(matrix)
    aug = [list(matrix[i]) + [ctx.one if j == i else ctx.zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
