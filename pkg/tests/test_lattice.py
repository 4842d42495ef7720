"""Cell table, window enumeration, and mirrored-cell combinatorics."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bidisklab import (
    CellKind,
    Window,
    build_context,
    mirrored_pairs,
    monomial_of_exponents,
    partner_cell,
    window_basis,
)

small_exponents = st.integers(min_value=1, max_value=6)


def test_single_cell_instance():
    ctx = build_context(1, 1)
    assert ctx.delta == 1
    assert len(ctx.cells) == 1
    cell = ctx.cells[0]
    assert (cell.a, cell.b) == (0, 0)
    assert cell.s == cell.t == 1
    assert cell.kind is CellKind.SYMMETRIC


def test_two_two_cell_table():
    ctx = build_context(2, 2)
    assert ctx.delta == 2
    table = {(c.a, c.b): c for c in ctx.cells}
    assert table[(0, 0)].kind is CellKind.SYMMETRIC
    assert table[(1, 1)].kind is CellKind.SYMMETRIC
    assert table[(0, 1)].kind is CellKind.ASYMMETRIC
    assert table[(1, 0)].kind is CellKind.ASYMMETRIC
    assert table[(0, 1)].s == Fraction(1, 2)
    assert table[(0, 1)].t == 1


def test_two_three_has_one_symmetric_cell():
    ctx = build_context(2, 3)
    assert ctx.delta == 1
    symmetric = [c for c in ctx.cells if c.kind is CellKind.SYMMETRIC]
    assert [(c.a, c.b) for c in symmetric] == [(1, 2)]
    assert symmetric[0].s == symmetric[0].t == 1


@pytest.mark.parametrize("k,l", [(0, 1), (1, 0), (0, 0)])
def test_rejects_nonpositive_exponents(k, l):
    with pytest.raises(ValueError):
        build_context(k, l)


def test_cells_ordered_lexicographically():
    ctx = build_context(3, 2)
    assert [(c.a, c.b) for c in ctx.cells] == [
        (0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1),
    ]


def test_window_basis_one_one_order():
    ctx = build_context(1, 1)
    basis = window_basis(ctx, Window(1, 1))
    assert [(x.cell.a, x.cell.b, x.n, x.m) for x in basis] == [
        (0, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
    ]


def test_window_basis_grade_zero_is_one_point_per_cell():
    ctx = build_context(2, 2)
    basis = window_basis(ctx, Window(0, 0))
    assert [(x.i, x.j) for x in basis] == [(0, 0), (0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize("k,l,n,expected", [(2, 3, 2, 36), (1, 1, 1, 3), (3, 3, 8, 405)])
def test_window_basis_size_formula(k, l, n, expected):
    ctx = build_context(k, l)
    basis = window_basis(ctx, Window(n, min(n, 2)))
    assert len(basis) == expected == k * l * (n + 1) * (n + 2) // 2


def test_monomial_addresses_are_unique():
    ctx = build_context(3, 2)
    basis = window_basis(ctx, Window(5, 5))
    exponents = {(x.i, x.j) for x in basis}
    assert len(exponents) == len(basis)
    for x in basis:
        assert monomial_of_exponents(ctx, x.i, x.j) == x
        assert x.i % 3 == x.cell.a and x.j % 2 == x.cell.b


def test_grade_and_interior_flags():
    ctx = build_context(2, 3)
    idx = monomial_of_exponents(ctx, 4, 5)  # cell (0,2), n=2, m=1
    assert (idx.n, idx.m) == (2, 1)
    assert idx.grade == 3
    assert idx.interior
    assert not monomial_of_exponents(ctx, 4, 2).interior


def test_partner_examples():
    ctx = build_context(2, 2)
    partner = partner_cell(ctx, ctx.cell(0, 1))
    assert (partner.a, partner.b) == (1, 0)
    self_mirror = partner_cell(ctx, ctx.cell(0, 0))
    assert self_mirror is ctx.cell(0, 0)
    assert partner_cell(build_context(2, 3), build_context(2, 3).cell(0, 0)) is None


def test_window_validation():
    with pytest.raises(ValueError):
        Window(max_grade=3, safe_grade=4)
    assert Window.standard(8).safe_grade == 4
    assert Window.standard(2).safe_grade == 0


@settings(max_examples=40, deadline=None)
@given(small_exponents, small_exponents)
def test_symmetric_cell_count_is_gcd(k, l):
    ctx = build_context(k, l)
    symmetric = sum(1 for c in ctx.cells if c.kind is CellKind.SYMMETRIC)
    assert symmetric == math.gcd(k, l)
    assert len(ctx.cells) - symmetric == k * l - math.gcd(k, l)


@settings(max_examples=40, deadline=None)
@given(small_exponents, small_exponents)
def test_partner_is_an_involution(k, l):
    ctx = build_context(k, l)
    for cell in ctx.cells:
        partner = partner_cell(ctx, cell)
        if partner is not None:
            back = partner_cell(ctx, partner)
            assert (back.a, back.b) == (cell.a, cell.b)
            assert (partner.s, partner.t) == (cell.t, cell.s)


@settings(max_examples=40, deadline=None)
@given(small_exponents, small_exponents)
def test_mirrored_pair_count(k, l):
    ctx = build_context(k, l)
    d = ctx.delta
    assert len(mirrored_pairs(ctx)) == (d * d - d) // 2


def test_weight_rationals_in_unit_interval():
    for k, l in [(1, 1), (2, 3), (4, 4), (5, 2)]:
        ctx = build_context(k, l)
        for cell in ctx.cells:
            assert 0 < cell.s <= 1 and 0 < cell.t <= 1
            assert (cell.kind is CellKind.SYMMETRIC) == (
                l * (cell.a + 1) == k * (cell.b + 1)
            )
