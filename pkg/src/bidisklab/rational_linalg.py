"""Sparse exact linear algebra over the rationals.

Rows are dicts {column: int} kept primitive (content 1, positive leading
coefficient), so elimination stays in integer arithmetic with gcd
normalization.  Fractions appear only at the interfaces.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction
from math import gcd


def normalize_row(row: dict[int, int]) -> dict[int, int]:
    """Strip zeros, divide by the content, make the leading entry positive."""
    row = {c: v for c, v in row.items() if v}
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _combine(a: int, r: dict[int, int], b: int, p: dict[int, int]) -> dict[int, int]:
    # a*r + b*p, normalized; a is a pivot coefficient so never zero
    out = {c: a * v for c, v in r.items()}
    for c, v in p.items():
        w = out.get(c, 0) + b * v
        if w:
            out[c] = w
        elif c in out:
            del out[c]
    return normalize_row(out)


class IntegerEchelon:
    """A growing row-echelon basis of a rational row space.

    Rows are kept sorted by pivot column; each inserted row is reduced
    against all existing pivots, so later rows are zero on earlier pivot
    columns (earlier rows may still touch later pivots until rref()).
    """

    def __init__(self) -> None:
        self.rows: list[dict[int, int]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        """Remainder of a row after elimination; empty iff row is in the span."""
        row = normalize_row(dict(row))
        for pv, pr in zip(self.pivots, self.rows):
            if not row:
                break
            c = row.get(pv)
            if c:
                row = _combine(pr[pv], row, -c, pr)
        return row

    def insert(self, row: dict[int, int]) -> bool:
        """Add a row to the span; returns True when the rank grew."""
        row = self.reduce(row)
        if not row:
            return False
        pv = min(row)
        pos = bisect_left(self.pivots, pv)
        self.pivots.insert(pos, pv)
        self.rows.insert(pos, row)
        return True

    def contains(self, row: dict[int, int]) -> bool:
        return not self.reduce(row)

    def rref(self) -> list[dict[int, int]]:
        """Canonical fully reduced rows (unique per row space), pivot-ascending."""
        rows = [dict(r) for r in self.rows]
        for i in range(len(rows) - 1, -1, -1):
            pv = self.pivots[i]
            for j in range(i):
                c = rows[j].get(pv)
                if c:
                    rows[j] = _combine(rows[i][pv], rows[j], -c, rows[i])
        return rows


def span_key(echelon: IntegerEchelon) -> tuple:
    """Hashable canonical form of the row space, for exact span comparison."""
    return tuple(tuple(sorted(r.items())) for r in echelon.rref())


def echelon_of(rows: list[dict[int, int]]) -> IntegerEchelon:
    ech = IntegerEchelon()
    for r in rows:
        ech.insert(r)
    return ech


def nullspace(
    constraints: list[dict[int, Fraction]], n_cols: int
) -> list[dict[int, Fraction]]:
    """Basis of {x : R x = 0} for small dense-able constraint systems."""
    rows = [[Fraction(r.get(c, 0)) for c in range(n_cols)] for r in constraints]
    pivots: list[int] = []
    rank = 0
    for col in range(n_cols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for r, pc in enumerate(pivots):
            v = rows[r][free]
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis
