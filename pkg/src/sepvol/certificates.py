"""Separability and entanglement certificates with a uniform verdict type.

Every certificate is one-sided: a separability certificate can prove a
state separable but never entangled, and vice versa, so ``INCONCLUSIVE``
is a first-class verdict. The partial-transposition check is the one
exception -- on 2x2 and 2x3 systems positivity of the partial transpose
is necessary *and* sufficient, so there it returns a definite verdict
either way and serves as the ground-truth oracle in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .tensor import (
    DensityMatrix,
    DimensionSpec,
    partial_trace,
    partial_transpose,
    purity,
)

BOUNDARY_TOL = 1e-12
PSD_TOL = 1e-10

# dims where a positive partial transpose implies separability
_PPT_EXACT_DIMS = {(2, 2), (2, 3), (3, 2)}


class Verdict(str, Enum):
    SEPARABLE = "separable"
    ENTANGLED = "entangled"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CertificateResult:
    """Outcome of one certificate.

    ``witness`` is the computed quantity, ``threshold`` the bound it was
    compared against and ``margin = witness - threshold`` the signed
    distance; which side of the threshold is decisive depends on the
    certificate (documented on each ``certify_*`` function).
    """

    certificate: str
    verdict: Verdict
    witness: float
    threshold: float

    @property
    def margin(self) -> float:
        return self.witness - self.threshold


@dataclass(frozen=True)
class BallSpec:
    """A certified ball: mixing weight ``epsilon`` toward a fixed center
    versus the certified radius ``epsilon_star``."""

    center: str  # "maximally_mixed" or "maximally_entangled"
    epsilon: float
    epsilon_star: float

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        if self.epsilon_star <= 0.0:
            raise ValueError(f"epsilon_star must be positive, got {self.epsilon_star}")


def l1_spin_norm(rho: DensityMatrix) -> float:
    """Sum of spin-coefficient magnitudes over all indices except (0, 0)."""
    return kernels.l1_spin_norm(rho.matrix, rho.dims.dims)


def certify_spin_l1(rho: DensityMatrix) -> CertificateResult:
    """Separable when the off-origin spin-coefficient L1 norm is <= 1."""
    witness = l1_spin_norm(rho)
    verdict = Verdict.SEPARABLE if witness <= 1.0 + BOUNDARY_TOL else Verdict.INCONCLUSIVE
    return CertificateResult("spin_l1", verdict, witness, 1.0)


def purity_threshold(n: int) -> float:
    """Purity level N/(N^2 - 1) below which every state is separable."""
    if n < 2:
        raise ValueError(f"composite dimension must be >= 2, got {n}")
    return n / (n * n - 1)


def certify_purity(rho: DensityMatrix) -> CertificateResult:
    """Separable when Tr[rho^2] <= N/(N^2 - 1)."""
    witness = purity(rho)
    threshold = purity_threshold(rho.n)
    verdict = Verdict.SEPARABLE if witness <= threshold + BOUNDARY_TOL else Verdict.INCONCLUSIVE
    return CertificateResult("purity", verdict, witness, threshold)


def mixed_ball_radius(n: int) -> float:
    """Radius 1/sqrt((N^2 - 1)(N - 1)) of the separable ball around I/N."""
    if n < 2:
        raise ValueError(f"composite dimension must be >= 2, got {n}")
    return 1.0 / math.sqrt((n * n - 1) * (n - 1))


def mix_with_identity(rho_prime: DensityMatrix, epsilon: float) -> DensityMatrix:
    """The convex mixture (1 - eps)*I/N + eps*rho'. Always a valid state."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    n = rho_prime.n
    matrix = (1.0 - epsilon) / n * np.eye(n, dtype=np.complex128) + epsilon * rho_prime.matrix
    return DensityMatrix(rho_prime.dims, np.ascontiguousarray(matrix))


def certify_mixed_ball(rho_prime: DensityMatrix, epsilon: float) -> CertificateResult:
    """Separable when eps <= the mixed-ball radius (any direction rho').

    The comparison is non-strict; witness is eps, threshold the radius.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    threshold = mixed_ball_radius(rho_prime.n)
    verdict = Verdict.SEPARABLE if epsilon <= threshold + BOUNDARY_TOL else Verdict.INCONCLUSIVE
    return CertificateResult("mixed_ball", verdict, epsilon, threshold)


def _require_two_qudits(dims: DimensionSpec) -> int:
    if len(dims) != 2 or dims.dims[0] != dims.dims[1] or dims.dims[0] < 2:
        raise ValueError(f"expected bipartite dims (d, d) with d >= 2, got {dims.dims}")
    return dims.dims[0]


def concurrence_witness(rho: DensityMatrix) -> float:
    """2*(Tr[rho^2] - Tr[rho_A^2]) -- a lower bound on the squared
    concurrence of a two-qudit state."""
    _require_two_qudits(rho.dims)
    reduced = partial_trace(rho, keep=(0,))
    return 2.0 * (purity(rho) - kernels.purity(reduced))


def concurrence_lower_bound(rho: DensityMatrix) -> float:
    """sqrt of the clamped concurrence witness; a negative witness carries
    no information and maps to 0."""
    return math.sqrt(max(0.0, concurrence_witness(rho)))


def certify_concurrence(rho: DensityMatrix) -> CertificateResult:
    """Entangled when the squared-concurrence lower bound is positive."""
    witness = concurrence_witness(rho)
    verdict = Verdict.ENTANGLED if witness > BOUNDARY_TOL else Verdict.INCONCLUSIVE
    return CertificateResult("concurrence", verdict, witness, 0.0)


def entangled_ball_radius(d: int) -> float:
    """Radius (d^2 - sqrt(d^4 - d(d^2 - 1)))/(1 + d) of the entangled ball
    around the maximally entangled two-qudit state.

    Strictly increasing in d with limit 1/2.
    """
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")
    return (d * d - math.sqrt(d**4 - d * (d * d - 1))) / (1 + d)


def entangled_ball_witness_floor(d: int, epsilon: float) -> float:
    """Closed-form lower bound (2/d^2)[d(d-1) - 2 d^2 eps + (1+d) eps^2]
    on the concurrence witness of any mixture
    (1-eps)|Phi><Phi| + eps*rho'. Positive exactly below the ball radius."""
    return 2.0 / (d * d) * (d * (d - 1) - 2 * d * d * epsilon + (1 + d) * epsilon * epsilon)


def max_entangled_state(d: int) -> DensityMatrix:
    """Projector onto (1/sqrt(d)) sum_i |ii>; both marginals are I/d."""
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")
    vec = np.zeros(d * d, dtype=np.complex128)
    vec[:: d + 1] = 1.0 / math.sqrt(d)
    return DensityMatrix(DimensionSpec((d, d)), np.outer(vec, vec.conj()))


def certify_entangled_ball(
    rho_prime: DensityMatrix, epsilon: float, d: int
) -> tuple[CertificateResult, DensityMatrix]:
    """Entangled when eps < the entangled-ball radius (strict comparison).

    Also returns the mixture (1-eps)|Phi><Phi| + eps*rho', since ball
    membership is not decidable from the mixture alone.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")
    if _require_two_qudits(rho_prime.dims) != d:
        raise ValueError(f"rho' has dims {rho_prime.dims.dims}, expected ({d}, {d})")
    phi = max_entangled_state(d)
    matrix = (1.0 - epsilon) * phi.matrix + epsilon * rho_prime.matrix
    mixture = DensityMatrix(rho_prime.dims, np.ascontiguousarray(matrix))
    threshold = entangled_ball_radius(d)
    verdict = Verdict.ENTANGLED if epsilon < threshold - BOUNDARY_TOL else Verdict.INCONCLUSIVE
    return CertificateResult("entangled_ball", verdict, epsilon, threshold), mixture


def ppt_check(rho: DensityMatrix, cut: int) -> CertificateResult:
    """Partial-transposition check on one subsystem.

    Witness is the minimum eigenvalue of the partial transpose; a negative
    value proves entanglement. A non-negative partial transpose proves
    separability only on 2x2 and 2x3 systems; elsewhere it is
    inconclusive (bound entanglement is not excluded).
    """
    pt = partial_transpose(rho, cut)
    witness = float(np.linalg.eigvalsh(pt)[0])
    if witness < -PSD_TOL:
        verdict = Verdict.ENTANGLED
    elif rho.dims.dims in _PPT_EXACT_DIMS:
        verdict = Verdict.SEPARABLE
    else:
        verdict = Verdict.INCONCLUSIVE
    return CertificateResult(f"ppt_{cut}", verdict, witness, 0.0)


def certify_all(rho: DensityMatrix) -> list[CertificateResult]:
    """Run every certificate applicable to the state's dimensions, in a
    fixed order: spin L1, purity, one PPT check per subsystem, and the
    concurrence bound for two equal qudits."""
    results = [certify_spin_l1(rho)]
    if rho.n >= 2:
        results.append(certify_purity(rho))
    if len(rho.dims) >= 2:
        for cut in range(len(rho.dims)):
            results.append(ppt_check(rho, cut))
    dims = rho.dims.dims
    if len(dims) == 2 and dims[0] == dims[1] and dims[0] >= 2:
        results.append(certify_concurrence(rho))
    return results
