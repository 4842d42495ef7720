"""Structure reports, swap unitaries, and numeric equivalence cross-checks."""

import pytest

from bidisklab import (
    Window,
    antisymmetric_part,
    build_context,
    canonical_subspace,
    commutant_diagnostics,
    commutant_dimension,
    full_cell,
    intertwiner_diagnostics,
    intertwiner_dimension,
    structure_report,
    swap_unitary_check,
    symmetric_part,
    with_measurement,
)

WINDOW = Window.standard(8)


def test_report_one_one():
    report = structure_report(build_context(1, 1))
    assert report.minimal_count == 2
    assert report.m == 0
    assert report.m_prime == 2
    assert report.dim_predicted == 2
    assert report.abelian
    kinds = sorted(e.kind for e in report.minimal_subspaces)
    assert kinds == ["antisymmetric", "symmetric"]


def test_report_two_two():
    report = structure_report(build_context(2, 2))
    assert report.delta == 2
    assert report.m == 1
    assert report.m_prime == 4
    assert report.dim_predicted == 8
    assert report.minimal_count == 6
    assert not report.abelian
    paired = {
        e.cell: e.paired_with
        for e in report.minimal_subspaces
        if e.kind == "full_cell"
    }
    assert paired == {(0, 1): (1, 0), (1, 0): (0, 1)}


def test_report_two_three():
    report = structure_report(build_context(2, 3))
    assert report.delta == 1
    assert (report.m, report.m_prime) == (0, 7)
    assert report.dim_predicted == 7
    assert report.minimal_count == 7
    assert report.abelian
    assert all(
        e.paired_with is None
        for e in report.minimal_subspaces
        if e.kind == "full_cell"
    )


@pytest.mark.parametrize("k", range(1, 5))
@pytest.mark.parametrize("l", range(1, 5))
def test_count_identities(k, l):
    ctx = build_context(k, l)
    report = structure_report(ctx)
    d = ctx.delta
    assert report.m == (d * d - d) // 2
    assert report.m_prime == k * l - d * d + 2 * d
    assert 4 * report.m + report.m_prime == k * l + d * d == report.dim_predicted
    assert report.minimal_count == k * l + d
    assert report.abelian == (d == 1) == (report.m == 0)


def test_measurement_attachment():
    report = structure_report(build_context(2, 2))
    assert report.dim_measured is None
    assert with_measurement(report, 8).dim_measured == 8


def test_swap_unitary_examples():
    ctx22 = build_context(2, 2)
    assert swap_unitary_check(ctx22, ctx22.cell(0, 1), ctx22.cell(1, 0), WINDOW)
    ctx33 = build_context(3, 3)
    assert swap_unitary_check(ctx33, ctx33.cell(0, 1), ctx33.cell(1, 0), WINDOW)
    assert swap_unitary_check(ctx33, ctx33.cell(0, 2), ctx33.cell(2, 0), WINDOW)


def test_swap_unitary_rejects_bad_pairs():
    ctx = build_context(2, 2)
    with pytest.raises(ValueError):
        swap_unitary_check(ctx, ctx.cell(0, 1), ctx.cell(0, 1), WINDOW)
    with pytest.raises(ValueError):
        swap_unitary_check(ctx, ctx.cell(0, 1), ctx.cell(0, 0), WINDOW)
    ctx23 = build_context(2, 3)
    with pytest.raises(ValueError):
        swap_unitary_check(ctx23, ctx23.cell(0, 0), ctx23.cell(1, 1), WINDOW)


def test_intertwiner_dimensions_two_two():
    ctx = build_context(2, 2)
    mirror_a = canonical_subspace(ctx, full_cell(0, 1), WINDOW)
    mirror_b = canonical_subspace(ctx, full_cell(1, 0), WINDOW)
    plus = canonical_subspace(ctx, symmetric_part(0, 0), WINDOW)
    minus = canonical_subspace(ctx, antisymmetric_part(0, 0), WINDOW)

    assert intertwiner_dimension(ctx, mirror_a, mirror_b, WINDOW) == 1
    assert intertwiner_dimension(ctx, plus, minus, WINDOW) == 0
    assert intertwiner_dimension(ctx, plus, plus, WINDOW) == 1
    assert intertwiner_dimension(ctx, mirror_a, plus, WINDOW) == 0
    assert intertwiner_dimension(ctx, mirror_a, minus, WINDOW) == 0


def test_intertwiner_gap_diagnostics():
    ctx = build_context(2, 2)
    mirror_a = canonical_subspace(ctx, full_cell(0, 1), WINDOW)
    mirror_b = canonical_subspace(ctx, full_cell(1, 0), WINDOW)
    diag = intertwiner_diagnostics(ctx, mirror_a, mirror_b, WINDOW, assume_reducing=True)
    assert diag.dimension == 1 and diag.gap_ok


def test_intertwiner_rejects_non_reducing_input():
    from bidisklab import Subspace, monomial_of_exponents, monomial_vector

    ctx = build_context(1, 1)
    lone = Subspace(
        [monomial_vector(monomial_of_exponents(ctx, 0, 0), WINDOW)], WINDOW, None
    )
    good = canonical_subspace(ctx, symmetric_part(0, 0), WINDOW)
    with pytest.raises(ValueError):
        intertwiner_dimension(ctx, lone, good, WINDOW)


def test_distinct_symmetric_cells_are_inequivalent():
    ctx = build_context(2, 2)
    plus_a = canonical_subspace(ctx, symmetric_part(0, 0), WINDOW)
    plus_b = canonical_subspace(ctx, symmetric_part(1, 1), WINDOW)
    minus_a = canonical_subspace(ctx, antisymmetric_part(0, 0), WINDOW)
    minus_b = canonical_subspace(ctx, antisymmetric_part(1, 1), WINDOW)
    assert intertwiner_dimension(ctx, plus_a, plus_b, WINDOW, assume_reducing=True) == 0
    assert intertwiner_dimension(ctx, minus_a, minus_b, WINDOW, assume_reducing=True) == 0


def test_non_mirrored_full_cells_are_inequivalent():
    ctx = build_context(3, 2)
    first = canonical_subspace(ctx, full_cell(0, 0), WINDOW)
    second = canonical_subspace(ctx, full_cell(2, 0), WINDOW)
    assert intertwiner_dimension(ctx, first, second, WINDOW, assume_reducing=True) == 0


def test_commutant_dimension_small():
    ctx = build_context(1, 1)
    window = Window(6, 2)
    assert commutant_dimension(ctx, window) == 2
    diag = commutant_diagnostics(ctx, window)
    assert diag.gap_ok and diag.dimension == 2


def test_commutant_needs_enough_window():
    ctx = build_context(1, 1)
    with pytest.raises(ValueError):
        commutant_dimension(ctx, Window(3, 2))
