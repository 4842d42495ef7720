"""Minimal-subspace inventory, unitary equivalence, and commutant dimension.

The inventory is exact: one full-cell subspace per asymmetric cell and a
symmetric/antisymmetric pair per symmetric cell; asymmetric cells with
mirrored weights (s', t') = (t, s) pair up into 2x2 matrix blocks of the
commutant, everything else contributes a scalar block.  Writing d for
gcd(k, l), the predicted counts are

    pair blocks     m  = (d^2 - d) / 2
    scalar blocks   m' = k*l - d^2 + 2*d
    dimension       4*m + m' = k*l + d^2
    minimal count   k*l + d

Equivalence is *decided* by the exact mirrored-cell criterion (and the
swap-unitary identities, checked as rational equalities); the SVD-based
intertwiner and commutant dimensions are numeric cross-checks, never the
decision procedure.  Their linear systems restrict the unknown to
grade-preserving blocks compatible with the diagonal commutator's
eigenspaces - restrictions every true commutant element satisfies - and
impose the commutation equations only on interior grades, where the
window compression of the operator is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .lattice import (
    Cell,
    CellKind,
    Context,
    MonomialIndex,
    Window,
    mirrored_pairs,
    partner_cell,
    window_basis,
)
from .operators import OpTag, SparseVector, apply, inner_product, raising_targets
from .spectral import eigenvalue_of
from .subspaces import Subspace, projection_commutes


@dataclass(frozen=True)
class MinimalEntry:
    """One minimal reducing subspace in the inventory."""

    kind: str                          # full_cell | symmetric | antisymmetric
    cell: tuple[int, int]
    paired_with: tuple[int, int] | None


@dataclass(frozen=True)
class StructureReport:
    """The computed commutant summary for one (k, l)."""

    k: int
    l: int
    delta: int
    minimal_subspaces: tuple[MinimalEntry, ...]
    m: int
    m_prime: int
    dim_predicted: int
    minimal_count: int
    abelian: bool
    dim_measured: int | None = None


def structure_report(ctx: Context) -> StructureReport:
    """Enumerate all minimal subspaces, pair mirrored cells, fill the counts."""
    entries: list[MinimalEntry] = []
    for cell in ctx.cells:
        if cell.kind is CellKind.SYMMETRIC:
            entries.append(MinimalEntry("symmetric", (cell.a, cell.b), None))
            entries.append(MinimalEntry("antisymmetric", (cell.a, cell.b), None))
        else:
            partner = partner_cell(ctx, cell)
            paired = (partner.a, partner.b) if partner is not None else None
            entries.append(MinimalEntry("full_cell", (cell.a, cell.b), paired))
    m = len(mirrored_pairs(ctx))
    full_cells = ctx.k * ctx.l - ctx.delta
    m_prime = (full_cells - 2 * m) + 2 * ctx.delta
    return StructureReport(
        k=ctx.k,
        l=ctx.l,
        delta=ctx.delta,
        minimal_subspaces=tuple(entries),
        m=m,
        m_prime=m_prime,
        dim_predicted=4 * m + m_prime,
        minimal_count=len(entries),
        abelian=m == 0,
    )


def with_measurement(report: StructureReport, dim_measured: int) -> StructureReport:
    return replace(report, dim_measured=dim_measured)


def swap_unitary_check(
    ctx: Context, cell1: Cell, cell2: Cell, window: Window
) -> bool:
    """Verify that the coordinate-swapping unitary between mirrored cells
    commutes with the symbol, as exact rational identities.

    The swap sends the cell1 lattice point (n, m) to the cell2 point
    (m, n); in the orthonormal basis both sides of the commutation have
    nonnegative entries whose squares are rational, so the comparison is
    exact.  Raises ``ValueError`` unless the cells are distinct mirrored
    partners.
    """
    if (cell1.a, cell1.b) == (cell2.a, cell2.b):
        raise ValueError("cells must be distinct mirrored partners")
    partner = partner_cell(ctx, cell1)
    if partner is None or (partner.a, partner.b) != (cell2.a, cell2.b):
        raise ValueError("cells are not mirrored partners")
    s, t = cell1.s, cell1.t
    s2, t2 = cell2.s, cell2.t
    for g in range(window.safe_grade + 1):
        for n in range(g + 1):
            m = g - n
            swap_after = {
                (m, n + 1): (s + n) / (s + n + 1),
                (m + 1, n): (t + m) / (t + m + 1),
            }
            raise_after = {
                (m + 1, n): (s2 + m) / (s2 + m + 1),
                (m, n + 1): (t2 + n) / (t2 + n + 1),
            }
            if swap_after != raise_after:
                return False
    return True


@dataclass(frozen=True)
class NullspaceDiagnostics:
    """Outcome of one singular-value nullity computation."""

    dimension: int
    n_unknowns: int
    n_equations: int
    gap_ratio: float           # inf when the split is perfectly clean
    gap_ok: bool
    largest_null: float
    smallest_kept: float


_GAP_FLOOR = 1e4


def _svd_nullity(
    rows: list[dict[int, float]], n_unknowns: int, tol: float
) -> NullspaceDiagnostics:
    if n_unknowns == 0:
        return NullspaceDiagnostics(0, 0, len(rows), float("inf"), True, 0.0, float("inf"))
    if not rows:
        return NullspaceDiagnostics(
            n_unknowns, n_unknowns, 0, float("inf"), True, 0.0, float("inf")
        )
    mat = np.zeros((len(rows), n_unknowns))
    for r, row in enumerate(rows):
        for c, v in row.items():
            mat[r, c] = v
    sv = np.linalg.svd(mat, compute_uv=False)
    kept = sv[sv >= tol]
    nulls = sv[sv < tol]
    dimension = n_unknowns - kept.size
    largest_null = float(nulls.max()) if nulls.size else 0.0
    smallest_kept = float(kept.min()) if kept.size else float("inf")
    if kept.size == 0:
        gap = float("inf")
    elif dimension == 0:
        gap = smallest_kept / tol
    elif largest_null == 0.0:
        gap = float("inf")
    else:
        gap = smallest_kept / largest_null
    return NullspaceDiagnostics(
        dimension=dimension,
        n_unknowns=n_unknowns,
        n_equations=len(rows),
        gap_ratio=gap,
        gap_ok=gap >= _GAP_FLOOR,
        largest_null=largest_null,
        smallest_kept=smallest_kept,
    )


def _normalized_raises(
    ctx: Context, idx: MonomialIndex, top: int
) -> list[tuple[MonomialIndex, float]]:
    out = []
    for tgt, c in raising_targets(ctx, idx):
        if tgt.grade > top:
            continue
        ratio = Fraction((idx.i + 1) * (idx.j + 1), (tgt.i + 1) * (tgt.j + 1))
        out.append((tgt, float(c) * math.sqrt(ratio)))
    return out


def commutant_diagnostics(
    ctx: Context, window: Window, tol: float = 1e-8
) -> NullspaceDiagnostics:
    """Numeric dimension of the operators commuting with the compressed
    symbol and its transpose, with full singular-value diagnostics.

    Unknowns are grade-preserving blocks on grades <= max_grade - 1 whose
    entries connect equal commutator eigenvalues; equations are the
    entrywise block commutation relations on interior grades.  Requires
    max_grade >= 4.
    """
    top = window.max_grade
    if top < 4:
        raise ValueError("commutant measurement needs max_grade >= 4")
    slices: list[list[MonomialIndex]] = [[] for _ in range(top + 1)]
    for idx in window_basis(ctx, window):
        slices[idx.grade].append(idx)
    lam = {idx: eigenvalue_of(idx) for idx in window_basis(ctx, window)}
    by_lam: list[dict[Fraction, list[MonomialIndex]]] = []
    for g in range(top + 1):
        table: dict[Fraction, list[MonomialIndex]] = {}
        for idx in slices[g]:
            table.setdefault(lam[idx], []).append(idx)
        by_lam.append(table)

    var_id: dict[tuple[MonomialIndex, MonomialIndex], int] = {}
    for g in range(top):
        for group in by_lam[g].values():
            for r in group:
                for c in group:
                    var_id[(r, c)] = len(var_id)

    raises = {
        idx: _normalized_raises(ctx, idx, top)
        for g in range(top)
        for idx in slices[g]
    }
    lowers: dict[MonomialIndex, list[tuple[MonomialIndex, float]]] = {
        idx: [] for idx in window_basis(ctx, window)
    }
    for src, targets in raises.items():
        for tgt, w in targets:
            lowers[tgt].append((src, w))

    equations: dict[tuple[int, MonomialIndex, MonomialIndex], dict[int, float]] = {}

    def touch(key, var, coeff):
        row = equations.setdefault(key, {})
        row[var] = row.get(var, 0.0) + coeff

    for g in range(top - 1):
        # (X R - R X)[r, c] = 0 on rows of grade g+1, columns of grade g
        for c in slices[g]:
            for k, w in raises[c]:
                for r in by_lam[g + 1].get(lam[k], ()):
                    touch((0, r, c), var_id[(r, k)], w)
        for r in slices[g + 1]:
            for k, w in lowers[r]:
                for c in by_lam[g].get(lam[k], ()):
                    touch((0, r, c), var_id[(k, c)], -w)
        # (X R^T - R^T X)[r, c] = 0 on rows of grade g, columns of grade g+1
        for c in slices[g + 1]:
            for k, w in lowers[c]:
                for r in by_lam[g].get(lam[k], ()):
                    touch((1, r, c), var_id[(r, k)], w)
        for r in slices[g]:
            for k, w in raises[r]:
                for c in by_lam[g + 1].get(lam[k], ()):
                    touch((1, r, c), var_id[(k, c)], -w)

    return _svd_nullity(list(equations.values()), len(var_id), tol)


def commutant_dimension(ctx: Context, window: Window, tol: float = 1e-8) -> int:
    """Measured commutant dimension; the structure prediction is kl + delta^2."""
    return commutant_diagnostics(ctx, window, tol).dimension


def _graded_orthonormal(
    ctx: Context, sub: Subspace, window: Window
) -> tuple[dict[int, list[int]], list[SparseVector], list[float], list[Fraction | None]]:
    """Group basis vectors by grade; record norms and eigenvalue tags."""
    by_grade: dict[int, list[int]] = {}
    norms: list[float] = []
    lam_tag: list[Fraction | None] = []
    for pos, b in enumerate(sub.basis):
        grades = {idx.grade for idx in b.terms}
        if len(grades) != 1:
            raise ValueError("intertwiner blocks need grade-homogeneous bases")
        by_grade.setdefault(grades.pop(), []).append(pos)
        norms.append(math.sqrt(float(inner_product(b, b))))
        lams = {eigenvalue_of(idx) for idx in b.terms}
        lam_tag.append(lams.pop() if len(lams) == 1 else None)
    return by_grade, list(sub.basis), norms, lam_tag


def _raise_block(
    ctx: Context,
    basis: list[SparseVector],
    norms: list[float],
    src: list[int],
    dst: list[int],
) -> np.ndarray:
    block = np.zeros((len(dst), len(src)))
    for jj, j in enumerate(src):
        image = apply(ctx, OpTag.POLY, basis[j])
        for ii, i in enumerate(dst):
            c = inner_product(image, basis[i])
            if c:
                block[ii, jj] = float(c) / (norms[i] * norms[j])
    return block


def intertwiner_diagnostics(
    ctx: Context,
    sub1: Subspace,
    sub2: Subspace,
    window: Window,
    tol: float = 1e-8,
    assume_reducing: bool = False,
) -> NullspaceDiagnostics:
    """Numeric dimension of the maps sub1 -> sub2 commuting with the
    compressed symbol and its transpose on interior grades.

    For minimal inputs the expected dimension is 1 (equivalent or equal)
    or 0 (inequivalent).  Raises ``ValueError`` on non-reducing input
    unless ``assume_reducing`` is set.
    """
    if not assume_reducing:
        for sub in (sub1, sub2):
            if not projection_commutes(ctx, sub, window):
                raise ValueError("intertwiner dimension needs reducing subspaces")
    top = window.max_grade
    grades1, basis1, norms1, lam1 = _graded_orthonormal(ctx, sub1, window)
    grades2, basis2, norms2, lam2 = _graded_orthonormal(ctx, sub2, window)

    var_id: dict[tuple[int, int], int] = {}
    for g in range(top):
        for i2 in grades2.get(g, ()):
            for i1 in grades1.get(g, ()):
                a, b = lam2[i2], lam1[i1]
                if a is None or b is None or a == b:
                    var_id[(i2, i1)] = len(var_id)

    blocks1 = {
        g: _raise_block(ctx, basis1, norms1, grades1.get(g, []), grades1.get(g + 1, []))
        for g in range(top)
    }
    blocks2 = {
        g: _raise_block(ctx, basis2, norms2, grades2.get(g, []), grades2.get(g + 1, []))
        for g in range(top)
    }

    rows: list[dict[int, float]] = []
    for g in range(top - 1):
        s1_lo, s1_hi = grades1.get(g, []), grades1.get(g + 1, [])
        s2_lo, s2_hi = grades2.get(g, []), grades2.get(g + 1, [])
        a1, a2 = blocks1[g], blocks2[g]
        # X_{g+1} A1_g  -  A2_g X_g  = 0
        for rr, r in enumerate(s2_hi):
            for cc, c in enumerate(s1_lo):
                row: dict[int, float] = {}
                for kk, k in enumerate(s1_hi):
                    var = var_id.get((r, k))
                    if var is not None and a1[kk, cc]:
                        row[var] = row.get(var, 0.0) + a1[kk, cc]
                for kk, k in enumerate(s2_lo):
                    var = var_id.get((k, c))
                    if var is not None and a2[rr, kk]:
                        row[var] = row.get(var, 0.0) - a2[rr, kk]
                if row:
                    rows.append(row)
        # X_g A1_g^T  -  A2_g^T X_{g+1}  = 0
        for rr, r in enumerate(s2_lo):
            for cc, c in enumerate(s1_hi):
                row = {}
                for kk, k in enumerate(s1_lo):
                    var = var_id.get((r, k))
                    if var is not None and a1[cc, kk]:
                        row[var] = row.get(var, 0.0) + a1[cc, kk]
                for kk, k in enumerate(s2_hi):
                    var = var_id.get((k, c))
                    if var is not None and a2[kk, rr]:
                        row[var] = row.get(var, 0.0) - a2[kk, rr]
                if row:
                    rows.append(row)

    return _svd_nullity(rows, len(var_id), tol)


def intertwiner_dimension(
    ctx: Context,
    sub1: Subspace,
    sub2: Subspace,
    window: Window,
    tol: float = 1e-8,
    assume_reducing: bool = False,
) -> int:
    return intertwiner_diagnostics(
        ctx, sub1, sub2, window, tol, assume_reducing
    ).dimension
