"""Exact verification lab for the reducing-subspace structure of
multiplication by z^k + w^l on the Bergman space of the bidisk.

The package constructs truncated multiplication operators exactly over
the rationals, enumerates the tie classes of the diagonal commutator,
builds every canonical minimal reducing subspace, and reproduces the
commutant's block decomposition: (d^2-d)/2 two-by-two blocks plus
k*l - d^2 + 2*d scalar blocks for d = gcd(k, l), of total dimension
k*l + d^2.
"""

from .lattice import (
    Cell,
    CellKind,
    Context,
    MonomialIndex,
    Window,
    basis_sort_key,
    build_context,
    mirrored_pairs,
    monomial_of_exponents,
    partner_cell,
    window_basis,
)
from .operators import (
    OpTag,
    SparseVector,
    apply,
    format_polynomial,
    inner_product,
    matrix_normalized,
    monomial_vector,
    raising_targets,
    squared_norm,
)
from .spectral import (
    EquivalenceClass,
    LemmaCheck,
    LemmaSuiteReport,
    class_of,
    commutator_weight,
    eigenvalue_of,
    lemma_suite,
    partition_window,
    spectral_project,
)
from .structure import (
    MinimalEntry,
    NullspaceDiagnostics,
    StructureReport,
    commutant_diagnostics,
    commutant_dimension,
    intertwiner_diagnostics,
    intertwiner_dimension,
    structure_report,
    swap_unitary_check,
    with_measurement,
)
from .subspaces import (
    GENERATED,
    Subspace,
    SubspaceLabel,
    antisymmetric_part,
    canonical_subspace,
    check_subspace,
    full_cell,
    generate_reducing,
    grade_slice,
    is_minimal,
    net_raising_span,
    projection_commutes,
    slice_recursion_holds,
    spans_equal_on_grade,
    symmetric_part,
    wandering_space,
)

__all__ = [
    "Cell",
    "CellKind",
    "Context",
    "EquivalenceClass",
    "GENERATED",
    "LemmaCheck",
    "LemmaSuiteReport",
    "MinimalEntry",
    "MonomialIndex",
    "NullspaceDiagnostics",
    "OpTag",
    "SparseVector",
    "StructureReport",
    "Subspace",
    "SubspaceLabel",
    "Window",
    "antisymmetric_part",
    "apply",
    "basis_sort_key",
    "build_context",
    "canonical_subspace",
    "check_subspace",
    "class_of",
    "commutant_diagnostics",
    "commutant_dimension",
    "commutator_weight",
    "eigenvalue_of",
    "format_polynomial",
    "full_cell",
    "generate_reducing",
    "grade_slice",
    "inner_product",
    "intertwiner_diagnostics",
    "intertwiner_dimension",
    "is_minimal",
    "lemma_suite",
    "matrix_normalized",
    "mirrored_pairs",
    "monomial_of_exponents",
    "monomial_vector",
    "net_raising_span",
    "partition_window",
    "partner_cell",
    "projection_commutes",
    "raising_targets",
    "slice_recursion_holds",
    "spans_equal_on_grade",
    "spectral_project",
    "squared_norm",
    "structure_report",
    "swap_unitary_check",
    "symmetric_part",
    "wandering_space",
    "window_basis",
    "with_measurement",
]

__version__ = "0.1.0"
