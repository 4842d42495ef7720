"""Reducing-subspace construction, closure, and minimality testing.

The canonical subspaces of one cell:

* ``full_cell``      - the closed span of all the cell's monomials;
* ``symmetric``      - spanned by x_{n,m} + x_{m,n} (cells with s == t);
* ``antisymmetric``  - spanned by x_{n,m} - x_{m,n}, n > m (same cells);
* ``grade_slice``    - the r+1 monomials of one lattice grade.

``generate_reducing`` computes the subspace a vector generates under the
symbol and its adjoint by iterating exact span growth until the dimension
stabilizes.  All spans are compared by canonical rational row reduction;
assertions are made only on grades up to the window's safe_grade, since
raising operators truncate at the window boundary.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import rational_linalg as rl
from .lattice import (
    Cell,
    CellKind,
    Context,
    MonomialIndex,
    Window,
    basis_sort_key,
    window_basis,
)
from .operators import (
    OpTag,
    SparseVector,
    apply,
    inner_product,
    monomial_vector,
)


@dataclass(frozen=True)
class SubspaceLabel:
    kind: str
    a: int | None = None
    b: int | None = None
    r: int | None = None

    def __str__(self) -> str:
        if self.kind == "generated":
            return "generated"
        if self.kind == "grade_slice":
            return f"grade_slice({self.a},{self.b},{self.r})"
        return f"{self.kind}({self.a},{self.b})"


def full_cell(a: int, b: int) -> SubspaceLabel:
    return SubspaceLabel("full_cell", a, b)


def symmetric_part(a: int, b: int) -> SubspaceLabel:
    return SubspaceLabel("symmetric", a, b)


def antisymmetric_part(a: int, b: int) -> SubspaceLabel:
    return SubspaceLabel("antisymmetric", a, b)


def grade_slice(a: int, b: int, r: int) -> SubspaceLabel:
    return SubspaceLabel("grade_slice", a, b, r)


GENERATED = SubspaceLabel("generated")


@dataclass
class Subspace:
    """An ordered list of pairwise-orthogonal nonzero vectors and its window."""

    basis: list[SparseVector]
    window: Window
    label: SubspaceLabel | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)


def check_subspace(sub: Subspace) -> None:
    """Validate the orthogonality/nonzero/window invariants; raises on failure."""
    for v in sub.basis:
        if not v.terms:
            raise ValueError("subspace basis contains the zero vector")
        if v.top_grade() > sub.window.max_grade:
            raise ValueError("basis vector exceeds the window")
    for i in range(len(sub.basis)):
        for j in range(i + 1, len(sub.basis)):
            if inner_product(sub.basis[i], sub.basis[j]):
                raise ValueError(f"basis vectors {i} and {j} are not orthogonal")


@lru_cache(maxsize=None)
def _frame_map(ctx: Context, window: Window) -> dict[MonomialIndex, int]:
    return {idx: p for p, idx in enumerate(window_basis(ctx, window))}


@lru_cache(maxsize=None)
def _safe_columns(ctx: Context, window: Window, grade: int) -> frozenset[int]:
    return frozenset(
        p for p, idx in enumerate(window_basis(ctx, window)) if idx.grade <= grade
    )


def _to_row(frame: dict[MonomialIndex, int], f: SparseVector) -> dict[int, int]:
    if not f.terms:
        return {}
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    return rl.normalize_row({frame[idx]: int(c * den) for idx, c in f.terms.items()})


def _from_row(ctx: Context, window: Window, row: dict[int, int]) -> SparseVector:
    basis = window_basis(ctx, window)
    return SparseVector({basis[c]: Fraction(v) for c, v in row.items()}, window)


def _primitive(f: SparseVector) -> SparseVector:
    """Rescale to coprime integer coefficients with positive leading term."""
    if not f.terms:
        return f
    den = 1
    num = 0
    for c in f.terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    scaled = {idx: int(c * den) for idx, c in f.terms.items()}
    for v in scaled.values():
        num = math.gcd(num, v)
    lead = min(scaled, key=basis_sort_key)
    if scaled[lead] < 0:
        num = -num
    return SparseVector({idx: Fraction(v, num) for idx, v in scaled.items()}, f.window)


def _orthogonalize(vectors: list[SparseVector]) -> list[SparseVector]:
    """Exact Gram-Schmidt without normalization; drops dependent vectors."""
    out: list[SparseVector] = []
    norms: list[Fraction] = []
    for v in vectors:
        w = v
        for u, n2 in zip(out, norms):
            c = inner_product(w, u)
            if c:
                w = w.sub(u.scale(c / n2))
        if w.terms:
            w = _primitive(w)
            out.append(w)
            norms.append(inner_product(w, w))
    return out


def canonical_subspace(ctx: Context, label: SubspaceLabel, window: Window) -> Subspace:
    """Build one of the named cell subspaces, truncated to the window.

    The symmetric and antisymmetric labels require a cell with s == t;
    the returned bases are orthogonal through disjoint or symmetric
    monomial supports.
    """
    if label.kind == "generated":
        raise ValueError("generated subspaces come from generate_reducing")
    cell = ctx.cell(label.a, label.b)
    top = window.max_grade
    vecs: list[SparseVector] = []
    if label.kind == "full_cell":
        for g in range(top + 1):
            for n in range(g, -1, -1):
                vecs.append(monomial_vector(MonomialIndex(cell, n, g - n), window))
    elif label.kind in ("symmetric", "antisymmetric"):
        if cell.kind is not CellKind.SYMMETRIC:
            raise ValueError(
                f"cell ({cell.a},{cell.b}) has unequal weights; no symmetric split"
            )
        anti = label.kind == "antisymmetric"
        for g in range(top + 1):
            for n in range(g, -1, -1):
                m = g - n
                if n < m or (anti and n == m):
                    continue
                vec = monomial_vector(MonomialIndex(cell, n, m), window)
                if n > m:
                    pair = monomial_vector(MonomialIndex(cell, m, n), window)
                    vec = vec.sub(pair) if anti else vec.add(pair)
                vecs.append(vec)
    elif label.kind == "grade_slice":
        r = label.r
        if r is None or not (0 <= r <= top):
            raise ValueError("grade_slice level must lie inside the window")
        for n in range(r, -1, -1):
            vecs.append(monomial_vector(MonomialIndex(cell, n, r - n), window))
    else:
        raise ValueError(f"unknown subspace label kind {label.kind!r}")
    return Subspace(vecs, window, label)


def _rebase(f: SparseVector, window: Window) -> SparseVector:
    return f if f.window == window else SparseVector(f.terms, window)


def _closure_echelon(
    ctx: Context, seeds: list[SparseVector], window: Window
) -> rl.IntegerEchelon:
    """Smallest window span containing the seeds and closed under the
    symbol and its adjoint (with boundary truncation)."""
    frame = _frame_map(ctx, window)
    ech = rl.IntegerEchelon()
    frontier: list[SparseVector] = []
    for f in seeds:
        f = _rebase(f, window)
        if f.terms and ech.insert(_to_row(frame, f)):
            frontier.append(f)
    while frontier:
        fresh: list[SparseVector] = []
        for v in frontier:
            for op in (OpTag.POLY, OpTag.POLY_STAR):
                g = apply(ctx, op, v)
                if g.terms and ech.insert(_to_row(frame, g)):
                    fresh.append(g)
        frontier = fresh
    return ech


def generate_reducing(ctx: Context, f: SparseVector, window: Window) -> Subspace:
    """The reducing subspace a vector generates, computed on the window.

    The result agrees with the untruncated closure on grades up to the
    safe_grade; the returned basis is orthogonalized exactly.
    """
    if not f.terms:
        raise ValueError("cannot generate from the zero vector")
    ech = _closure_echelon(ctx, [f], window)
    vecs = [_from_row(ctx, window, row) for row in ech.rows]
    return Subspace(_orthogonalize(vecs), window, GENERATED)


def _net_raising_echelon(
    ctx: Context, seeds: list[SparseVector], window: Window, word_bound: int
) -> rl.IntegerEchelon:
    """Span of all words in the symbol and its adjoint of length <= word_bound
    with net raising degree +1, applied to the seeds.

    Layered span growth: the slot at net degree d accumulates the images
    of all words of that net degree, and each newly independent vector is
    expanded exactly once, so the result equals the full word span.
    """
    frame = _frame_map(ctx, window)
    slots: dict[int, rl.IntegerEchelon] = {0: rl.IntegerEchelon()}
    frontier: dict[int, list[SparseVector]] = {0: []}
    for f in seeds:
        f = _rebase(f, window)
        if f.terms and slots[0].insert(_to_row(frame, f)):
            frontier[0].append(f)
    for step in range(1, word_bound + 1):
        remaining = word_bound - step
        staged: dict[int, list[SparseVector]] = {}
        for d, vecs in frontier.items():
            for v in vecs:
                for op, nd in ((OpTag.POLY, d + 1), (OpTag.POLY_STAR, d - 1)):
                    if abs(1 - nd) > remaining:
                        continue  # cannot get back to net degree +1 in time
                    g = apply(ctx, op, v)
                    if g.terms:
                        staged.setdefault(nd, []).append(g)
        frontier = {}
        for nd, vecs in staged.items():
            ech = slots.setdefault(nd, rl.IntegerEchelon())
            added = [g for g in vecs if ech.insert(_to_row(frame, g))]
            if added:
                frontier[nd] = added
        if not frontier:
            break
    return slots.get(1, rl.IntegerEchelon())


def net_raising_span(
    ctx: Context, source: Subspace, window: Window, word_bound: int
) -> Subspace:
    """Public face of the net-degree-(+1) word span, row-reduced and
    orthogonalized.  Monotone nondecreasing in word_bound; callers use
    word_bound >= 2*safe_grade + 1."""
    ech = _net_raising_echelon(ctx, source.basis, window, word_bound)
    vecs = [_from_row(ctx, window, row) for row in ech.rows]
    return Subspace(_orthogonalize(vecs), window, None)


def wandering_space(ctx: Context, sub: Subspace, window: Window) -> Subspace:
    """Orthogonal complement of the net-raising span inside the subspace.

    Computed exactly: the complement solves the rational Gram pairing
    against the span and is then Gram-Schmidt orthogonalized; the result
    is reported on the safe window.
    """
    word_bound = 2 * window.safe_grade + 1
    span_ech = _net_raising_echelon(ctx, sub.basis, window, word_bound)
    span_vecs = [_from_row(ctx, window, row) for row in span_ech.rows]
    constraints = []
    for sv in span_vecs:
        row = {}
        for pos, b in enumerate(sub.basis):
            c = inner_product(b, sv)
            if c:
                row[pos] = c
        constraints.append(row)
    frame = _frame_map(ctx, window)
    keep: list[SparseVector] = []
    dedupe = rl.IntegerEchelon()
    for coords in rl.nullspace(constraints, len(sub.basis)):
        vec = SparseVector({}, window)
        for pos, c in coords.items():
            vec = vec.add(sub.basis[pos].scale(c))
        vec = vec.restrict(window.safe_grade)
        if vec.terms and dedupe.insert(_to_row(frame, vec)):
            keep.append(vec)
    return Subspace(_orthogonalize(keep), window, None)


def _restricted_span_key(
    rows: list[dict[int, int]], allowed: frozenset[int]
) -> tuple:
    ech = rl.IntegerEchelon()
    for row in rows:
        ech.insert({c: v for c, v in row.items() if c in allowed})
    return rl.span_key(ech)


def _subspace_rows(
    ctx: Context, vectors: list[SparseVector], window: Window
) -> list[dict[int, int]]:
    frame = _frame_map(ctx, window)
    return [_to_row(frame, _rebase(v, window)) for v in vectors]


def spans_equal_on_grade(
    ctx: Context,
    first: list[SparseVector],
    second: list[SparseVector],
    window: Window,
    grade: int,
) -> bool:
    """Exact equality of two spans after projecting onto grades <= grade."""
    allowed = _safe_columns(ctx, window, grade)
    return _restricted_span_key(
        _subspace_rows(ctx, first, window), allowed
    ) == _restricted_span_key(_subspace_rows(ctx, second, window), allowed)


def projection_commutes(ctx: Context, sub: Subspace, window: Window) -> bool:
    """Whether the orthogonal projection onto the subspace commutes with the
    symbol and its adjoint on every monomial of grade <= safe_grade, exactly."""
    norms = [inner_product(b, b) for b in sub.basis]

    def project(f: SparseVector) -> SparseVector:
        out = SparseVector({}, f.window)
        for b, n2 in zip(sub.basis, norms):
            c = inner_product(f, b)
            if c:
                out = out.add(b.scale(c / n2))
        return out

    for idx in window_basis(ctx, window):
        if idx.grade > window.safe_grade:
            continue
        x = monomial_vector(idx, window)
        for op in (OpTag.POLY, OpTag.POLY_STAR):
            if project(apply(ctx, op, x)) != apply(ctx, op, project(x)):
                return False
    return True


def _random_combination(
    rng: random.Random, pool: list[SparseVector], window: Window
) -> SparseVector:
    while True:
        f = SparseVector({}, window)
        for pos in sorted(rng.sample(range(len(pool)), rng.randint(1, len(pool)))):
            num = rng.randint(-3, 3)
            if num:
                f = f.add(pool[pos].scale(Fraction(num, rng.randint(1, 2))))
        if f.terms:
            return f


def is_minimal(
    ctx: Context,
    sub: Subspace,
    window: Window,
    trials: int = 20,
    seed: int = 0,
) -> bool:
    """Randomized minimality test with conclusive failures.

    Trial generators are drawn from the subspace: first its own basis
    vectors supported in the safe region, then seeded random rational
    combinations of them.  Any generator whose closure is strictly
    smaller on the safe window witnesses non-minimality and returns
    False immediately; a True answer is evidence, not proof.
    """
    if not sub.basis:
        raise ValueError("minimality is undefined for the zero subspace")
    safe = window.safe_grade
    allowed = _safe_columns(ctx, window, safe)
    target = _restricted_span_key(_subspace_rows(ctx, sub.basis, window), allowed)
    pool = [b for b in sub.basis if b.top_grade() <= safe] or list(sub.basis)
    rng = random.Random(seed)

    def closure_matches(f: SparseVector) -> bool:
        ech = _closure_echelon(ctx, [f], window)
        return _restricted_span_key(ech.rows, allowed) == target

    used = 0
    for b in pool:
        if used >= trials:
            break
        used += 1
        if not closure_matches(b):
            return False
    while used < trials:
        used += 1
        if not closure_matches(_random_combination(rng, pool, window)):
            return False
    return True


def slice_recursion_holds(ctx: Context, cell: Cell, r: int, window: Window) -> bool:
    """Whether one raising step plus a commutator kick fills the next grade:

        span( P(E_r) union C(P(E_r)) ) == E_{r+1}

    for P the symbol and C the diagonal commutator, exactly.  Valid for
    r >= 1 with r+1 inside the window."""
    if r < 1 or r + 1 > window.max_grade:
        raise ValueError("slice level must satisfy 1 <= r <= max_grade - 1")
    frame = _frame_map(ctx, window)
    ech = rl.IntegerEchelon()
    for n in range(r, -1, -1):
        x = monomial_vector(MonomialIndex(cell, n, r - n), window)
        raised = apply(ctx, OpTag.POLY, x)
        kicked = apply(ctx, OpTag.COMMUTATOR, raised)
        for v in (raised, kicked):
            if v.terms:
                ech.insert(_to_row(frame, v))
    return ech.rank == r + 2
