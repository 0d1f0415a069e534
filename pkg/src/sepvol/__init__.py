"""Separability certificates and Monte Carlo estimation of the volume of
separable states for finite-dimensional multipartite quantum systems."""

from .certificates import (
    BallSpec,
    CertificateResult,
    Verdict,
    certify_all,
    certify_concurrence,
    certify_entangled_ball,
    certify_mixed_ball,
    certify_purity,
    certify_spin_l1,
    concurrence_lower_bound,
    concurrence_witness,
    entangled_ball_radius,
    entangled_ball_witness_floor,
    l1_spin_norm,
    max_entangled_state,
    mix_with_identity,
    mixed_ball_radius,
    ppt_check,
    purity_threshold,
)
from .kernels import BACKEND
from .sampling import Measure, SeedSpec, haar_unitary, rng_from_spec, sample_simplex, sample_state
from .spin import (
    SpinCoefficients,
    add_indices,
    adjusted_basis_element,
    flat_index,
    fourier_matrix,
    from_spin_coeffs,
    index_parts,
    parseval_residual,
    spin_matrix,
    spin_matrix_multi,
    to_adjusted,
    to_spin_coeffs,
)
from .tensor import (
    DensityMatrix,
    DimensionSpec,
    NotHermitianError,
    NotPSDError,
    SizeMismatchError,
    StateValidationError,
    TraceNotOneError,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    partial_transpose,
    purity,
    validate_density,
)
from .volume import (
    CertificateTally,
    SandwichReport,
    VolumeEstimate,
    clopper_pearson_interval,
    estimate_fractions,
    sandwich_report,
    separable_volume_lower_bound,
    separable_volume_upper_bound,
    wilson_interval,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BallSpec",
    "CertificateResult",
    "CertificateTally",
    "DensityMatrix",
    "DimensionSpec",
    "Measure",
    "NotHermitianError",
    "NotPSDError",
    "SandwichReport",
    "SeedSpec",
    "SizeMismatchError",
    "SpinCoefficients",
    "StateValidationError",
    "TraceNotOneError",
    "Verdict",
    "VolumeEstimate",
    "add_indices",
    "adjusted_basis_element",
    "certify_all",
    "certify_concurrence",
    "certify_entangled_ball",
    "certify_mixed_ball",
    "certify_purity",
    "certify_spin_l1",
    "clopper_pearson_interval",
    "concurrence_lower_bound",
    "concurrence_witness",
    "entangled_ball_radius",
    "entangled_ball_witness_floor",
    "estimate_fractions",
    "flat_index",
    "fourier_matrix",
    "from_spin_coeffs",
    "haar_unitary",
    "hermitian_eigenvalues",
    "index_parts",
    "kron",
    "l1_spin_norm",
    "max_entangled_state",
    "mix_with_identity",
    "mixed_ball_radius",
    "parseval_residual",
    "partial_trace",
    "partial_transpose",
    "ppt_check",
    "purity",
    "purity_threshold",
    "rng_from_spec",
    "sample_simplex",
    "sample_state",
    "sandwich_report",
    "separable_volume_lower_bound",
    "separable_volume_upper_bound",
    "spin_matrix",
    "spin_matrix_multi",
    "to_adjusted",
    "to_spin_coeffs",
    "validate_density",
    "wilson_interval",
]
