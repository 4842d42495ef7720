"""Exact sparse actions of the shift operators, their adjoints, and the commutator.

Monomials are orthogonal in the weighted pairing

    <z^i w^j, z^i w^j> = 1 / ((i+1)(j+1)),

so multiplication by z^k shifts a cell's lattice point (n, m) to (n+1, m)
with coefficient 1, and its adjoint lowers with the exact rational ratio
(s+n-1)/(s+n).  The commutator of the full symbol with its adjoint is
diagonal on monomials; its eigenvalues live in :mod:`bidisklab.spectral`.

Raising operators silently drop the part of the image that would leave
the truncation window; callers assert correctness only on the safe
region of the window.  Everything here is exact except
:func:`matrix_normalized`, which is the single floating-point surface.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction

import numpy as np

from .lattice import Context, MonomialIndex, Window, basis_sort_key, window_basis

_ONE = Fraction(1)


class OpTag(Enum):
    """The closed family of operators acted out by :func:`apply`."""

    ZK = "zk"                    # multiplication by z^k
    ZK_STAR = "zk_star"
    WL = "wl"                    # multiplication by w^l
    WL_STAR = "wl_star"
    POLY = "poly"                # multiplication by z^k + w^l
    POLY_STAR = "poly_star"
    COMMUTATOR = "commutator"    # poly_star.poly - poly.poly_star (diagonal)


_ADJOINT_BASE = {
    OpTag.ZK_STAR: OpTag.ZK,
    OpTag.WL_STAR: OpTag.WL,
    OpTag.POLY_STAR: OpTag.POLY,
}


class SparseVector:
    """A finitely supported map index -> exact rational coefficient.

    Invariants: no stored coefficient is zero and every index respects
    the attached window.  Instances are treated as immutable; arithmetic
    returns new vectors carrying the left operand's window.
    """

    __slots__ = ("terms", "window")

    def __init__(self, terms: dict[MonomialIndex, Fraction], window: Window):
        clean: dict[MonomialIndex, Fraction] = {}
        for idx, c in terms.items():
            if not isinstance(c, Fraction):
                c = Fraction(c)
            if c:
                if idx.grade > window.max_grade:
                    raise ValueError("coefficient stored beyond the window boundary")
                clean[idx] = c
        self.terms = clean
        self.window = window

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def add(self, other: "SparseVector") -> "SparseVector":
        out = dict(self.terms)
        for idx, c in other.terms.items():
            acc = out.get(idx)
            out[idx] = c if acc is None else acc + c
        return SparseVector(out, self.window)

    def sub(self, other: "SparseVector") -> "SparseVector":
        out = dict(self.terms)
        for idx, c in other.terms.items():
            acc = out.get(idx)
            out[idx] = -c if acc is None else acc - c
        return SparseVector(out, self.window)

    def scale(self, c: Fraction | int) -> "SparseVector":
        c = Fraction(c)
        if not c:
            return SparseVector({}, self.window)
        return SparseVector({idx: v * c for idx, v in self.terms.items()}, self.window)

    def restrict(self, max_grade: int) -> "SparseVector":
        """Drop all terms above the given grade."""
        return SparseVector(
            {idx: v for idx, v in self.terms.items() if idx.grade <= max_grade},
            self.window,
        )

    def top_grade(self) -> int:
        """Largest grade in the support (-1 for the zero vector)."""
        return max((idx.grade for idx in self.terms), default=-1)

    def __repr__(self) -> str:
        return f"SparseVector({format_polynomial(self)})"


def monomial_vector(idx: MonomialIndex, window: Window, coeff: Fraction | int = 1) -> SparseVector:
    return SparseVector({idx: Fraction(coeff)}, window)


def _lower_ratio(u: Fraction, n: int) -> Fraction:
    # coefficient carried by one adjoint lowering step, n >= 1
    return (u + n - 1) / (u + n)


def _act(ctx: Context, op: OpTag, idx: MonomialIndex) -> list[tuple[MonomialIndex, Fraction]]:
    """Exact image of a single monomial, ignoring window truncation."""
    cell = idx.cell
    if op is OpTag.ZK:
        return [(MonomialIndex(cell, idx.n + 1, idx.m), _ONE)]
    if op is OpTag.WL:
        return [(MonomialIndex(cell, idx.n, idx.m + 1), _ONE)]
    if op is OpTag.ZK_STAR:
        if idx.n == 0:
            return []
        return [(MonomialIndex(cell, idx.n - 1, idx.m), _lower_ratio(cell.s, idx.n))]
    if op is OpTag.WL_STAR:
        if idx.m == 0:
            return []
        return [(MonomialIndex(cell, idx.n, idx.m - 1), _lower_ratio(cell.t, idx.m))]
    if op is OpTag.POLY:
        return _act(ctx, OpTag.ZK, idx) + _act(ctx, OpTag.WL, idx)
    if op is OpTag.POLY_STAR:
        return _act(ctx, OpTag.ZK_STAR, idx) + _act(ctx, OpTag.WL_STAR, idx)
    if op is OpTag.COMMUTATOR:
        from .spectral import eigenvalue_of

        return [(idx, eigenvalue_of(idx))]
    raise ValueError(f"unknown operator tag {op!r}")


def raising_targets(ctx: Context, idx: MonomialIndex) -> list[tuple[MonomialIndex, Fraction]]:
    """Targets and coefficients of one application of the full symbol."""
    return _act(ctx, OpTag.POLY, idx)


def apply(ctx: Context, op: OpTag, f: SparseVector) -> SparseVector:
    """Apply an operator to a truncated vector, exactly.

    Raising operators drop (never error on) terms that would exceed the
    window's max_grade; the result records the same window.  Raises
    ``ValueError`` if the vector indexes a cell outside the context.
    """
    out: dict[MonomialIndex, Fraction] = {}
    top = f.window.max_grade
    for idx, c in f.terms.items():
        if idx.cell.k != ctx.k or idx.cell.l != ctx.l:
            raise ValueError("vector index lies outside the context's cell set")
        for tgt, w in _act(ctx, op, idx):
            if tgt.grade > top:
                continue
            acc = out.get(tgt)
            val = c * w if acc is None else acc + c * w
            out[tgt] = val
    return SparseVector(out, f.window)


def inner_product(f: SparseVector, g: SparseVector) -> Fraction:
    """Weighted Bergman pairing, exact over the rationals."""
    if len(f.terms) > len(g.terms):
        f, g = g, f
    total = Fraction(0)
    for idx, c in f.terms.items():
        d = g.terms.get(idx)
        if d is not None:
            total += c * d / ((idx.i + 1) * (idx.j + 1))
    return total


def squared_norm(f: SparseVector) -> Fraction:
    return inner_product(f, f)


def matrix_normalized(ctx: Context, op: OpTag, window: Window) -> np.ndarray:
    """Dense matrix of the compressed operator in the orthonormal basis.

    The basis is {sqrt((i+1)(j+1)) z^i w^j} in window order; entries are
    floating-point square roots of exact rationals.  Adjoint tags return
    the exact transpose of their base tag's matrix.
    """
    base = _ADJOINT_BASE.get(op)
    if base is not None:
        return matrix_normalized(ctx, base, window).T.copy()
    basis = window_basis(ctx, window)
    pos = {idx: p for p, idx in enumerate(basis)}
    size = len(basis)
    mat = np.zeros((size, size))
    for col, src in enumerate(basis):
        for tgt, c in _act(ctx, op, src):
            if tgt.grade > window.max_grade:
                continue
            ratio = Fraction((src.i + 1) * (src.j + 1), (tgt.i + 1) * (tgt.j + 1))
            mat[pos[tgt], col] = float(c) * math.sqrt(ratio)
    return mat


def format_monomial(i: int, j: int) -> str:
    if i == 0 and j == 0:
        return "1"
    parts = []
    if i == 1:
        parts.append("z")
    elif i > 1:
        parts.append(f"z^{i}")
    if j == 1:
        parts.append("w")
    elif j > 1:
        parts.append(f"w^{j}")
    return "*".join(parts)


def format_polynomial(f: SparseVector) -> str:
    """Deterministic human-readable rendering, terms in basis order."""
    if not f.terms:
        return "0"
    items = sorted(f.terms.items(), key=lambda kv: basis_sort_key(kv[0]))
    chunks = []
    for pos, (idx, c) in enumerate(items):
        mono = format_monomial(idx.i, idx.j)
        mag = abs(c)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if pos == 0:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(chunks)
