"""Canonical subspaces, closures, wandering spaces, and minimality."""

import pytest

from bidisklab import (
    CellKind,
    SparseVector,
    Subspace,
    Window,
    antisymmetric_part,
    build_context,
    canonical_subspace,
    check_subspace,
    format_polynomial,
    full_cell,
    generate_reducing,
    grade_slice,
    inner_product,
    is_minimal,
    monomial_of_exponents,
    monomial_vector,
    net_raising_span,
    projection_commutes,
    slice_recursion_holds,
    spans_equal_on_grade,
    symmetric_part,
    wandering_space,
    window_basis,
)

WINDOW = Window.standard(8)


def mono(ctx, i, j, window=WINDOW, coeff=1):
    return monomial_vector(monomial_of_exponents(ctx, i, j), window, coeff)


def rendered(sub):
    return [format_polynomial(v) for v in sub.basis]


# ---------------------------------------------------------------------------
# canonical bases


def test_antisymmetric_basis_one_one():
    ctx = build_context(1, 1)
    sub = canonical_subspace(ctx, antisymmetric_part(0, 0), Window(2, 2))
    assert rendered(sub) == ["z - w", "z^2 - w^2"]
    check_subspace(sub)


def test_full_cell_basis_two_two():
    ctx = build_context(2, 2)
    sub = canonical_subspace(ctx, full_cell(0, 1), Window(1, 1))
    assert rendered(sub) == ["w", "z^2*w", "w^3"]
    check_subspace(sub)


def test_symmetric_basis_one_one():
    ctx = build_context(1, 1)
    sub = canonical_subspace(ctx, symmetric_part(0, 0), Window(1, 1))
    assert rendered(sub) == ["1", "z + w"]
    check_subspace(sub)


def test_grade_slice_basis():
    ctx = build_context(2, 2)
    sub = canonical_subspace(ctx, grade_slice(0, 1, 1), WINDOW)
    assert rendered(sub) == ["z^2*w", "w^3"]


def test_symmetric_label_needs_equal_weights():
    ctx = build_context(2, 2)
    with pytest.raises(ValueError):
        canonical_subspace(ctx, symmetric_part(0, 1), WINDOW)
    with pytest.raises(ValueError):
        canonical_subspace(ctx, antisymmetric_part(1, 0), WINDOW)


@pytest.mark.parametrize("k,l", [(1, 1), (2, 2), (3, 3), (2, 4)])
def test_symmetric_split_dimensions(k, l):
    ctx = build_context(k, l)
    window = Window(6, 2)
    for cell in ctx.cells:
        if cell.kind is not CellKind.SYMMETRIC:
            continue
        whole = canonical_subspace(ctx, full_cell(cell.a, cell.b), window)
        plus = canonical_subspace(ctx, symmetric_part(cell.a, cell.b), window)
        minus = canonical_subspace(ctx, antisymmetric_part(cell.a, cell.b), window)
        assert plus.dim + minus.dim == whole.dim
        for u in plus.basis:
            for v in minus.basis:
                assert inner_product(u, v) == 0


def test_cell_decomposition_covers_window():
    ctx = build_context(2, 3)
    total = sum(
        canonical_subspace(ctx, full_cell(c.a, c.b), WINDOW).dim for c in ctx.cells
    )
    assert total == len(window_basis(ctx, WINDOW))


# ---------------------------------------------------------------------------
# generated subspaces


def test_generation_from_difference_gives_antisymmetric():
    ctx = build_context(1, 1)
    gen = generate_reducing(ctx, mono(ctx, 1, 0).sub(mono(ctx, 0, 1)), WINDOW)
    target = canonical_subspace(ctx, antisymmetric_part(0, 0), WINDOW)
    assert spans_equal_on_grade(ctx, gen.basis, target.basis, WINDOW, WINDOW.safe_grade)
    check_subspace(gen)


def test_generation_from_constant_gives_symmetric():
    ctx = build_context(1, 1)
    gen = generate_reducing(ctx, mono(ctx, 0, 0), WINDOW)
    target = canonical_subspace(ctx, symmetric_part(0, 0), WINDOW)
    assert spans_equal_on_grade(ctx, gen.basis, target.basis, WINDOW, WINDOW.safe_grade)


def test_generation_from_asymmetric_cell_monomial_gives_full_cell():
    ctx = build_context(2, 2)
    gen = generate_reducing(ctx, mono(ctx, 0, 1), WINDOW)
    target = canonical_subspace(ctx, full_cell(0, 1), WINDOW)
    assert spans_equal_on_grade(ctx, gen.basis, target.basis, WINDOW, WINDOW.safe_grade)


def test_generation_from_mixed_mirrored_seed_has_half_dimension():
    ctx = build_context(2, 2)
    seed = mono(ctx, 0, 1, coeff=2).add(mono(ctx, 1, 0, coeff=3))
    gen = generate_reducing(ctx, seed, WINDOW)
    both = (
        canonical_subspace(ctx, full_cell(0, 1), WINDOW).basis
        + canonical_subspace(ctx, full_cell(1, 0), WINDOW).basis
    )
    from bidisklab.subspaces import _restricted_span_key, _safe_columns, _subspace_rows

    allowed = _safe_columns(ctx, WINDOW, WINDOW.safe_grade)
    half = len(_restricted_span_key(_subspace_rows(ctx, gen.basis, WINDOW), allowed))
    whole = len(_restricted_span_key(_subspace_rows(ctx, both, WINDOW), allowed))
    assert 2 * half == whole
    assert not spans_equal_on_grade(ctx, gen.basis, both, WINDOW, WINDOW.safe_grade)


def test_generation_rejects_zero_vector():
    ctx = build_context(1, 1)
    with pytest.raises(ValueError):
        generate_reducing(ctx, SparseVector({}, WINDOW), WINDOW)


def test_generated_subspace_is_invariant_on_window():
    ctx = build_context(2, 3)
    gen = generate_reducing(ctx, mono(ctx, 1, 1), WINDOW)
    assert projection_commutes(ctx, gen, WINDOW)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_grade_slices_generate_full_cell(r):
    ctx = build_context(2, 2)
    from bidisklab.subspaces import _closure_echelon, _restricted_span_key, _safe_columns, _subspace_rows

    cell = ctx.cell(1, 0)
    seeds = canonical_subspace(ctx, grade_slice(1, 0, r), WINDOW).basis
    ech = _closure_echelon(ctx, seeds, WINDOW)
    target = canonical_subspace(ctx, full_cell(1, 0), WINDOW)
    allowed = _safe_columns(ctx, WINDOW, WINDOW.safe_grade)
    assert _restricted_span_key(ech.rows, allowed) == _restricted_span_key(
        _subspace_rows(ctx, target.basis, WINDOW), allowed
    )


# ---------------------------------------------------------------------------
# net-raising spans and wandering spaces


def test_net_raising_span_fills_first_slice():
    ctx = build_context(2, 2)
    source = Subspace([mono(ctx, 0, 1)], WINDOW, None)
    span = net_raising_span(ctx, source, WINDOW, 2 * WINDOW.safe_grade + 1)
    slice_one = canonical_subspace(ctx, grade_slice(0, 1, 1), WINDOW)
    assert span.dim == 2
    assert spans_equal_on_grade(ctx, span.basis, slice_one.basis, WINDOW, 8)


def test_net_raising_span_of_antisymmetric_seed_is_one_dimensional():
    ctx = build_context(1, 1)
    seed = mono(ctx, 1, 0).sub(mono(ctx, 0, 1))
    span = net_raising_span(ctx, Subspace([seed], WINDOW, None), WINDOW, 9)
    assert span.dim == 1
    expected = mono(ctx, 2, 0).sub(mono(ctx, 0, 2))
    assert spans_equal_on_grade(ctx, span.basis, [expected], WINDOW, 8)


def test_single_word_span():
    ctx = build_context(1, 1)
    span = net_raising_span(ctx, Subspace([mono(ctx, 0, 0)], WINDOW, None), WINDOW, 1)
    assert rendered(span) == ["z + w"]


def test_net_raising_span_monotone_and_stable():
    ctx = build_context(2, 2)
    sub = canonical_subspace(ctx, full_cell(0, 1), WINDOW)
    wb = 2 * WINDOW.safe_grade + 1
    dims = [net_raising_span(ctx, sub, WINDOW, b).dim for b in (1, 3, wb, wb + 1, wb + 2)]
    assert dims == sorted(dims)
    assert dims[-3] == dims[-2] == dims[-1]


def canonical_minimal(ctx, window):
    subs = []
    for cell in ctx.cells:
        if cell.kind is CellKind.SYMMETRIC:
            subs.append(canonical_subspace(ctx, symmetric_part(cell.a, cell.b), window))
            subs.append(
                canonical_subspace(ctx, antisymmetric_part(cell.a, cell.b), window)
            )
        else:
            subs.append(canonical_subspace(ctx, full_cell(cell.a, cell.b), window))
    return subs


def expected_wandering_vector(ctx, sub, window):
    a, b = sub.label.a, sub.label.b
    if sub.label.kind == "antisymmetric":
        return monomial_vector(
            monomial_of_exponents(ctx, a + ctx.k, b), window
        ).sub(monomial_vector(monomial_of_exponents(ctx, a, b + ctx.l), window))
    return monomial_vector(monomial_of_exponents(ctx, a, b), window)


def test_wandering_space_examples():
    ctx22 = build_context(2, 2)
    wander = wandering_space(ctx22, canonical_subspace(ctx22, full_cell(0, 1), WINDOW), WINDOW)
    assert rendered(wander) == ["w"]

    ctx11 = build_context(1, 1)
    minus = canonical_subspace(ctx11, antisymmetric_part(0, 0), WINDOW)
    assert rendered(wandering_space(ctx11, minus, WINDOW)) == ["z - w"]
    plus = canonical_subspace(ctx11, symmetric_part(0, 0), WINDOW)
    assert rendered(wandering_space(ctx11, plus, WINDOW)) == ["1"]


@pytest.mark.parametrize("k,l", [(2, 2), (2, 3)])
def test_wandering_spaces_regenerate_their_subspace(k, l):
    ctx = build_context(k, l)
    for sub in canonical_minimal(ctx, WINDOW):
        wander = wandering_space(ctx, sub, WINDOW)
        assert wander.dim == 1
        expected = expected_wandering_vector(ctx, sub, WINDOW)
        assert spans_equal_on_grade(
            ctx, wander.basis, [expected], WINDOW, WINDOW.safe_grade
        )
        regen = generate_reducing(ctx, wander.basis[0], WINDOW)
        assert spans_equal_on_grade(
            ctx, regen.basis, sub.basis, WINDOW, WINDOW.safe_grade
        )


# ---------------------------------------------------------------------------
# minimality and invariance


def test_minimality_of_asymmetric_full_cell():
    ctx = build_context(2, 2)
    sub = canonical_subspace(ctx, full_cell(0, 1), WINDOW)
    assert is_minimal(ctx, sub, WINDOW, trials=20, seed=0)


def test_symmetric_full_cell_is_not_minimal():
    # the constant generates only the symmetric half, a conclusive witness
    ctx = build_context(2, 2)
    sub = canonical_subspace(ctx, full_cell(0, 0), WINDOW)
    assert not is_minimal(ctx, sub, WINDOW, trials=20, seed=0)


def test_minimality_of_symmetric_halves():
    ctx = build_context(1, 1)
    assert is_minimal(ctx, canonical_subspace(ctx, symmetric_part(0, 0), WINDOW), WINDOW)
    assert is_minimal(
        ctx, canonical_subspace(ctx, antisymmetric_part(0, 0), WINDOW), WINDOW
    )


def test_minimality_rejects_zero_subspace():
    ctx = build_context(1, 1)
    with pytest.raises(ValueError):
        is_minimal(ctx, Subspace([], WINDOW, None), WINDOW)


def test_minimality_is_seed_deterministic():
    ctx = build_context(2, 2)
    sub = canonical_subspace(ctx, full_cell(1, 0), WINDOW)
    runs = [is_minimal(ctx, sub, WINDOW, trials=7, seed=11) for _ in range(2)]
    assert runs[0] == runs[1]


def test_projection_commutes_examples():
    ctx11 = build_context(1, 1)
    lone = Subspace([mono(ctx11, 0, 0)], WINDOW, None)
    assert not projection_commutes(ctx11, lone, WINDOW)

    ctx22 = build_context(2, 2)
    assert projection_commutes(
        ctx22, canonical_subspace(ctx22, full_cell(0, 1), WINDOW), WINDOW
    )
    assert projection_commutes(
        ctx11, canonical_subspace(ctx11, antisymmetric_part(0, 0), WINDOW), WINDOW
    )


@pytest.mark.parametrize("k,l", [(2, 2), (2, 3), (1, 1)])
def test_slice_recursion(k, l):
    ctx = build_context(k, l)
    for cell in ctx.cells:
        for r in range(1, 6):
            assert slice_recursion_holds(ctx, cell, r, WINDOW)


def test_slice_recursion_rejects_grade_zero():
    ctx = build_context(2, 2)
    with pytest.raises(ValueError):
        slice_recursion_holds(ctx, ctx.cell(0, 0), 0, WINDOW)


def test_check_subspace_flags_non_orthogonal_basis():
    ctx = build_context(1, 1)
    v1 = mono(ctx, 1, 0)
    v2 = mono(ctx, 1, 0).add(mono(ctx, 0, 1))
    with pytest.raises(ValueError):
        check_subspace(Subspace([v1, v2], WINDOW, None))
