"""Monomial-lattice combinatorics for the symbol z^k + w^l on the bidisk.

The Bergman-space monomials z^i w^j split by their exponent residues mod
(k, l) into k*l cells: cell (a, b) holds the monomials z^{a+nk} w^{b+ml}
for lattice points (n, m) in Z+^2.  Each cell carries two exact rationals

    s = (a+1)/k        t = (b+1)/l

which drive every operator coefficient attached to the cell.  Cells with
s == t behave symmetrically in the two variables (their subspace splits
into a symmetric and an antisymmetric half), so that distinction is
recorded as the cell kind.  Everything in this module is exact: s and t
are ``Fraction`` values and all equality tests are rational equalities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache


class CellKind(Enum):
    """Whether the two weight rationals of a cell differ or coincide."""

    ASYMMETRIC = "asymmetric"  # s != t
    SYMMETRIC = "symmetric"    # s == t


@dataclass(frozen=True)
class Cell:
    """One residue class (a, b) of monomial exponents with its weights.

    ``s`` and ``t`` lie in (0, 1]; the kind is SYMMETRIC exactly when
    s == t, equivalently l*(a+1) == k*(b+1).
    """

    a: int
    b: int
    k: int
    l: int
    s: Fraction
    t: Fraction
    kind: CellKind


@dataclass(frozen=True, eq=False)
class MonomialIndex:
    """The basis monomial z^{a+nk} w^{b+ml}, addressed by cell and (n, m).

    The absolute exponents (i, j) determine the address uniquely, so
    equality and hashing go through (cell coordinates, n, m).
    """

    cell: Cell
    n: int
    m: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialIndex):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and self.cell.a == other.cell.a
            and self.cell.b == other.cell.b
            and self.cell.k == other.cell.k
            and self.cell.l == other.cell.l
        )

    def __hash__(self) -> int:
        return hash((self.cell.a, self.cell.b, self.n, self.m))

    @property
    def i(self) -> int:
        """Absolute z-exponent a + n*k."""
        return self.cell.a + self.n * self.cell.k

    @property
    def j(self) -> int:
        """Absolute w-exponent b + m*l."""
        return self.cell.b + self.m * self.cell.l

    @property
    def grade(self) -> int:
        """Lattice level n + m; one application of the symbol raises it by 1."""
        return self.n + self.m

    @property
    def interior(self) -> bool:
        """True when both lattice coordinates are >= 1."""
        return self.n >= 1 and self.m >= 1

    def __repr__(self) -> str:
        return f"MonomialIndex(({self.cell.a},{self.cell.b}), n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Window:
    """Truncation window: keep lattice grades <= max_grade.

    ``safe_grade`` marks the region where truncated computations agree
    with the untruncated ones; callers assert correctness only there.
    """

    max_grade: int
    safe_grade: int

    def __post_init__(self) -> None:
        if self.max_grade < 0 or self.safe_grade < 0:
            raise ValueError("window grades must be nonnegative")
        if self.safe_grade > self.max_grade:
            raise ValueError("safe_grade must not exceed max_grade")

    @classmethod
    def standard(cls, max_grade: int = 8) -> "Window":
        """Window with the default safety margin of four grades."""
        return cls(max_grade=max_grade, safe_grade=max(0, max_grade - 4))


@dataclass(frozen=True, eq=False)
class Context:
    """A problem instance: exponents k, l and the full cell table.

    Two contexts are interchangeable exactly when they share (k, l);
    the cell table is determined by those.
    """

    k: int
    l: int
    delta: int
    cells: tuple[Cell, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Context):
            return NotImplemented
        return self.k == other.k and self.l == other.l

    def __hash__(self) -> int:
        return hash((self.k, self.l))

    def cell(self, a: int, b: int) -> Cell:
        if not (0 <= a < self.k and 0 <= b < self.l):
            raise ValueError(f"cell ({a},{b}) outside the {self.k}x{self.l} exponent box")
        return self.cells[a * self.l + b]

    def __repr__(self) -> str:
        return f"Context(k={self.k}, l={self.l}, delta={self.delta})"


def build_context(k: int, l: int) -> Context:
    """Construct the cell table for the symbol z^k + w^l.

    Cells are ordered lexicographically by (a, b).  Raises ``ValueError``
    if either exponent is not positive.
    """
    if k < 1 or l < 1:
        raise ValueError("both exponents must be positive integers")
    cells = []
    for a in range(k):
        for b in range(l):
            s = Fraction(a + 1, k)
            t = Fraction(b + 1, l)
            kind = CellKind.SYMMETRIC if s == t else CellKind.ASYMMETRIC
            cells.append(Cell(a, b, k, l, s, t, kind))
    return Context(k=k, l=l, delta=math.gcd(k, l), cells=tuple(cells))


def basis_sort_key(idx: MonomialIndex) -> tuple[int, int, int, int]:
    """Canonical basis order: cell-major, then grade, then n descending."""
    return (idx.cell.a, idx.cell.b, idx.grade, -idx.n)


@lru_cache(maxsize=None)
def _window_basis_cached(ctx: Context, window: Window) -> tuple[MonomialIndex, ...]:
    out = []
    for cell in ctx.cells:
        for g in range(window.max_grade + 1):
            for n in range(g, -1, -1):
                out.append(MonomialIndex(cell, n, g - n))
    return tuple(out)


def window_basis(ctx: Context, window: Window) -> list[MonomialIndex]:
    """All monomial indices of grade <= max_grade, in canonical order.

    The size is k*l*(N+1)(N+2)/2 for N = max_grade.
    """
    return list(_window_basis_cached(ctx, window))


def monomial_of_exponents(ctx: Context, i: int, j: int) -> MonomialIndex:
    """Address the monomial z^i w^j on the cell lattice."""
    if i < 0 or j < 0:
        raise ValueError("exponents must be nonnegative")
    a, n = i % ctx.k, i // ctx.k
    b, m = j % ctx.l, j // ctx.l
    return MonomialIndex(ctx.cell(a, b), n, m)


def partner_cell(ctx: Context, cell: Cell) -> Cell | None:
    """The mirrored cell (a', b') with weights (s', t') = (t, s), if any.

    A cell with s == t is its own mirror.  Otherwise the mirror exists
    exactly when k*(b+1)/l and l*(a+1)/k are both integers; mirrored
    asymmetric cells host unitarily equivalent cell subspaces.
    """
    if cell.k != ctx.k or cell.l != ctx.l:
        raise ValueError("cell does not belong to this context")
    if cell.kind is CellKind.SYMMETRIC:
        return cell
    a_succ = ctx.k * cell.t   # a' + 1
    b_succ = ctx.l * cell.s   # b' + 1
    if a_succ.denominator != 1 or b_succ.denominator != 1:
        return None
    a_p, b_p = int(a_succ) - 1, int(b_succ) - 1
    if not (0 <= a_p < ctx.k and 0 <= b_p < ctx.l):
        return None
    return ctx.cell(a_p, b_p)


def mirrored_pairs(ctx: Context) -> list[tuple[Cell, Cell]]:
    """Unordered pairs of distinct asymmetric cells that mirror each other."""
    seen: set[tuple[int, int]] = set()
    pairs = []
    for cell in ctx.cells:
        if cell.kind is CellKind.SYMMETRIC:
            continue
        p = partner_cell(ctx, cell)
        if p is None:
            continue
        key = ((cell.a, cell.b), (p.a, p.b))
        if key[0] > key[1]:
            key = (key[1], key[0])
        if key not in seen:
            seen.add(key)
            pairs.append((ctx.cell(*key[0]), ctx.cell(*key[1])))
    return pairs
