"""Exact spectral bookkeeping for the diagonal commutator of the symbol.

The commutator of multiplication by z^k + w^l with its adjoint acts
diagonally on monomials; on the cell-(a, b) lattice point (n, m) its
eigenvalue is

    weight(s, n) + weight(t, m)

with the two-case rational weight computed by :func:`commutator_weight`.
Two lattice points (possibly in different cells) are *tied* when their
eigenvalues agree exactly.  Every tie class is finite, and this module
enumerates classes completely: the scan over the smaller coordinate is
bounded, and the remaining coordinate is recovered by an exact
integer-root test of a quadratic, so no floating point ever enters a
tie decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import TYPE_CHECKING

from .lattice import (
    Cell,
    CellKind,
    Context,
    MonomialIndex,
    Window,
    basis_sort_key,
    window_basis,
)

if TYPE_CHECKING:  # pragma: no cover
    from .operators import SparseVector


def commutator_weight(u: Fraction, n: int) -> Fraction:
    """Per-variable diagonal weight of the shift commutator.

    For a weight rational u in (0, 1]:

        n == 0:  u / (u + 1)
        n >= 1:  1 / ((u + n)(u + n + 1))
    """
    if not (0 < u <= 1):
        raise ValueError("weight rational must lie in (0, 1]")
    if n == 0:
        return u / (u + 1)
    d = u + n
    return 1 / (d * (d + 1))


def eigenvalue_of(idx: MonomialIndex) -> Fraction:
    """Commutator eigenvalue of a basis monomial, exact."""
    return commutator_weight(idx.cell.s, idx.n) + commutator_weight(idx.cell.t, idx.m)


@dataclass(frozen=True)
class EquivalenceClass:
    """All basis monomials sharing one exact commutator eigenvalue.

    ``complete`` is True when the member list is provably exhaustive over
    the whole (untruncated) lattice, not merely window-restricted.
    """

    eigenvalue: Fraction
    members: tuple[MonomialIndex, ...]
    complete: bool

    @property
    def size(self) -> int:
        return len(self.members)


def _solve_tail(u: Fraction, target: Fraction) -> int | None:
    """The integer j >= 1 with 1/((u+j)(u+j+1)) == target, if one exists.

    Reduces to testing whether 1 + 4/target is the square of a rational
    and whether the resulting root lands on an integer lattice point.
    """
    if target <= 0:
        return None
    radicand = 1 + 4 / target
    p, q = radicand.numerator, radicand.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp != p or rq * rq != q:
        return None
    j = (Fraction(rp, rq) - 1) / 2 - u
    if j.denominator != 1 or j < 1:
        return None
    return int(j)


def _scan_bound(lam: Fraction) -> int:
    """Smallest B with 2/((B+1)(B+2)) <= lam.

    Any tie-class member with both coordinates >= B+1 would have
    eigenvalue strictly below lam, so the smaller coordinate of every
    member is at most B.
    """
    bound = 0
    limit = 2 / lam
    while (bound + 1) * (bound + 2) < limit:
        bound += 1
    return bound


def class_of(ctx: Context, idx: MonomialIndex) -> EquivalenceClass:
    """The complete tie class of a monomial, across all cells.

    For each cell, each candidate value of one coordinate up to the scan
    bound is tried (including the boundary rows n == 0 and m == 0), and
    the other coordinate is recovered exactly; symmetry of the two scans
    covers every solution.
    """
    lam = eigenvalue_of(idx)
    bound = _scan_bound(lam)
    found: set[MonomialIndex] = set()
    for cell in ctx.cells:
        zero_s = commutator_weight(cell.s, 0)
        zero_t = commutator_weight(cell.t, 0)
        for n in range(bound + 1):
            rest = lam - commutator_weight(cell.s, n)
            if rest == zero_t:
                found.add(MonomialIndex(cell, n, 0))
            m = _solve_tail(cell.t, rest)
            if m is not None:
                found.add(MonomialIndex(cell, n, m))
        for m in range(bound + 1):
            rest = lam - commutator_weight(cell.t, m)
            if rest == zero_s:
                found.add(MonomialIndex(cell, 0, m))
            n = _solve_tail(cell.s, rest)
            if n is not None:
                found.add(MonomialIndex(cell, n, m))
    members = tuple(sorted(found, key=basis_sort_key))
    assert idx in found, "tie-class solver must recover its own seed"
    return EquivalenceClass(lam, members, complete=True)


def partition_window(ctx: Context, window: Window) -> list[EquivalenceClass]:
    """Group the window basis by exact eigenvalue.

    Classes are disjoint, their union is the whole window basis, and the
    complete flag records whether the window already holds the full tie
    class.  Class order follows the first member's basis position.
    """
    groups: dict[Fraction, list[MonomialIndex]] = {}
    for idx in window_basis(ctx, window):
        groups.setdefault(eigenvalue_of(idx), []).append(idx)
    out = []
    for lam, members in groups.items():
        members_sorted = tuple(sorted(members, key=basis_sort_key))
        full = class_of(ctx, members_sorted[0])
        out.append(EquivalenceClass(lam, members_sorted, full.members == members_sorted))
    return out


def spectral_project(
    classes: list[EquivalenceClass], eigenvalue: Fraction, f: "SparseVector"
) -> "SparseVector":
    """Restrict a vector's coefficients to one eigenvalue's members.

    Idempotent; returns the zero vector when the eigenvalue names no
    listed class.
    """
    from .operators import SparseVector

    members: set[MonomialIndex] = set()
    for cls in classes:
        if cls.eigenvalue == eigenvalue:
            members = set(cls.members)
            break
    return SparseVector(
        {idx: c for idx, c in f.terms.items() if idx in members}, f.window
    )


@dataclass(frozen=True)
class LemmaCheck:
    """One named exhaustive check with an optional counterexample payload."""

    name: str
    passed: bool
    counterexample: dict | None = None


@dataclass(frozen=True)
class LemmaSuiteReport:
    k: int
    l: int
    range_bound: int
    checks: tuple[LemmaCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _tied(cell: Cell, p: tuple[int, int], q: tuple[int, int]) -> bool:
    return (
        commutator_weight(cell.s, p[0]) + commutator_weight(cell.t, p[1])
        == commutator_weight(cell.s, q[0]) + commutator_weight(cell.t, q[1])
    )


def lemma_suite(ctx: Context, range_bound: int) -> LemmaSuiteReport:
    """Exhaustive tie-structure checks over all cells up to a lattice bound.

    The five named checks:

    * ``antidiagonal_endpoints_tie_iff_symmetric`` - (r,0) ties (0,r)
      exactly on cells with s == t, for every r >= 1.
    * ``boundary_tie_not_hereditary`` - if (n+1,0) ties (n,1) for some
      n >= 2 then (n,0) does not tie (n-1,1); likewise with the roles of
      the two coordinates exchanged.
    * ``no_boundary_interior_tie_on_symmetric`` - on cells with s == t,
      (n+m,0) never ties (n,m) for n, m >= 1.
    * ``antidiagonal_never_single_class`` - for r >= 2 the r+1 points of
      one antidiagonal never share a single eigenvalue.
    * ``same_grade_ties_force_transpose`` - a same-grade tie between two
      distinct points that are both interior or both boundary forces
      s == t and the points to be transposes of each other.
    """
    if range_bound < 2:
        raise ValueError("range_bound must be at least 2")

    checks: list[LemmaCheck] = []

    def record(name: str, counterexample: dict | None) -> None:
        checks.append(LemmaCheck(name, counterexample is None, counterexample))

    bad = None
    for cell in ctx.cells:
        symmetric = cell.kind is CellKind.SYMMETRIC
        for r in range(1, range_bound + 1):
            if _tied(cell, (r, 0), (0, r)) != symmetric:
                bad = {"cell": [cell.a, cell.b], "r": r, "symmetric": symmetric}
                break
        if bad:
            break
    record("antidiagonal_endpoints_tie_iff_symmetric", bad)

    bad = None
    for cell in ctx.cells:
        for n in range(2, range_bound + 1):
            if _tied(cell, (n + 1, 0), (n, 1)) and _tied(cell, (n, 0), (n - 1, 1)):
                bad = {"cell": [cell.a, cell.b], "axis": "z", "n": n}
                break
            if _tied(cell, (0, n + 1), (1, n)) and _tied(cell, (0, n), (1, n - 1)):
                bad = {"cell": [cell.a, cell.b], "axis": "w", "m": n}
                break
        if bad:
            break
    record("boundary_tie_not_hereditary", bad)

    bad = None
    for cell in ctx.cells:
        if cell.kind is not CellKind.SYMMETRIC:
            continue
        for n in range(1, range_bound + 1):
            for m in range(1, range_bound + 1):
                if _tied(cell, (n + m, 0), (n, m)):
                    bad = {"cell": [cell.a, cell.b], "n": n, "m": m}
                    break
            if bad:
                break
        if bad:
            break
    record("no_boundary_interior_tie_on_symmetric", bad)

    bad = None
    for cell in ctx.cells:
        for r in range(2, range_bound + 1):
            values = {
                commutator_weight(cell.s, n) + commutator_weight(cell.t, r - n)
                for n in range(r + 1)
            }
            if len(values) == 1:
                bad = {"cell": [cell.a, cell.b], "r": r}
                break
        if bad:
            break
    record("antidiagonal_never_single_class", bad)

    bad = None
    for cell in ctx.cells:
        symmetric = cell.kind is CellKind.SYMMETRIC
        for grade in range(1, 2 * range_bound + 1):
            lo = max(0, grade - range_bound)
            hi = min(grade, range_bound)
            points = [(n, grade - n) for n in range(lo, hi + 1)]
            for x in range(len(points)):
                for y in range(x + 1, len(points)):
                    p, q = points[x], points[y]
                    same_set = (p[0] >= 1 and p[1] >= 1) == (q[0] >= 1 and q[1] >= 1)
                    if not same_set or not _tied(cell, p, q):
                        continue
                    if not symmetric or q != (p[1], p[0]):
                        bad = {"cell": [cell.a, cell.b], "pair": [list(p), list(q)]}
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    record("same_grade_ties_force_transpose", bad)

    return LemmaSuiteReport(ctx.k, ctx.l, range_bound, tuple(checks))
