"""Semi-normality of finite-dimensional operators via the numerical range
of the self-commutator, with the Volterra integration operator as a fully
worked non-semi-normal example."""

from seminormal.core import (
    DEFAULT_TOL,
    DimensionMismatch,
    HermitianOperator,
    SubspaceBasis,
    adjoint,
    as_operator,
    as_vector,
    hermitian_eigendecomposition,
    norm_defect,
    null_space,
    operator_norm,
    quadratic_form,
    self_commutator,
)
from seminormal.numrange import (
    BoundaryPoint,
    NumericalRangeBoundary,
    RealInterval,
    convex_hull,
    hermitian_part_rotated,
    hull_distance,
    is_extreme_point,
    linearity_witness,
    m_lambda_membership,
    m_lambda_subspace,
    numerical_range_boundary,
    numerical_range_interval,
)
from seminormal.classify import (
    ClassificationReport,
    EquivalenceScan,
    KernelM0Report,
    SeminormalClass,
    StampfliRecord,
    classify,
    e_set_membership,
    kernel_equals_m0_check,
    reducing_eigenvalue_check,
    stampfli_check,
    stampfli_equivalence_scan,
)
from seminormal.volterra import (
    GAMMA,
    CanonicalPair,
    CommutatorSpectrumReport,
    GalerkinMatrix,
    LegendreBasis,
    canonical_pair,
    commutator_kernel_galerkin,
    commutator_spectrum_report,
    e_v_membership,
    evaluate_in_basis,
    gauss_legendre_rule,
    l_phi_basis,
    midpoint_discretization,
    phi_from_vector,
    shifted_legendre_eval,
    volterra_galerkin,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "DimensionMismatch",
    "HermitianOperator",
    "SubspaceBasis",
    "adjoint",
    "as_operator",
    "as_vector",
    "hermitian_eigendecomposition",
    "norm_defect",
    "null_space",
    "operator_norm",
    "quadratic_form",
    "self_commutator",
    "BoundaryPoint",
    "NumericalRangeBoundary",
    "RealInterval",
    "convex_hull",
    "hermitian_part_rotated",
    "hull_distance",
    "is_extreme_point",
    "linearity_witness",
    "m_lambda_membership",
    "m_lambda_subspace",
    "numerical_range_boundary",
    "numerical_range_interval",
    "ClassificationReport",
    "EquivalenceScan",
    "KernelM0Report",
    "SeminormalClass",
    "StampfliRecord",
    "classify",
    "e_set_membership",
    "kernel_equals_m0_check",
    "reducing_eigenvalue_check",
    "stampfli_check",
    "stampfli_equivalence_scan",
    "GAMMA",
    "CanonicalPair",
    "CommutatorSpectrumReport",
    "GalerkinMatrix",
    "LegendreBasis",
    "canonical_pair",
    "commutator_kernel_galerkin",
    "commutator_spectrum_report",
    "e_v_membership",
    "evaluate_in_basis",
    "gauss_legendre_rule",
    "l_phi_basis",
    "midpoint_discretization",
    "phi_from_vector",
    "shifted_legendre_eval",
    "volterra_galerkin",
]
