"""Generalized spin basis and the coefficient transform.

The single-system basis comes from the finite Fourier transform applied to
the "adjusted" matrix units A[j, l] = E[j, j+l mod d]; multipartite bases
are Kronecker products of the per-subsystem matrices. A density matrix is
carried to its spin coefficients by reindexing into the adjusted array and
applying the conjugated component-wise DFT to the first index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .tensor import DensityMatrix, DimensionSpec, as_dims, kron, validate_density


def flat_index(parts: Sequence[int], dims: DimensionSpec | Iterable[int]) -> int:
    """Flatten a component tuple, subsystem 0 most significant."""
    spec = as_dims(dims)
    if len(parts) != len(spec):
        raise ValueError(f"index tuple {tuple(parts)} does not match dims {spec.dims}")
    flat = 0
    for p, d in zip(parts, spec.dims):
        if not 0 <= p < d:
            raise ValueError(f"index component {p} out of range for dimension {d}")
        flat = flat * d + p
    return flat


def index_parts(flat: int, dims: DimensionSpec | Iterable[int]) -> tuple[int, ...]:
    """Inverse of :func:`flat_index`."""
    spec = as_dims(dims)
    if not 0 <= flat < spec.total:
        raise ValueError(f"flat index {flat} out of range for dims {spec.dims}")
    parts = []
    for d in reversed(spec.dims):
        parts.append(flat % d)
        flat //= d
    return tuple(reversed(parts))


def add_indices(j: Sequence[int], l: Sequence[int], dims: DimensionSpec | Iterable[int]) -> tuple[int, ...]:
    """Componentwise addition modulo the subsystem dimensions."""
    spec = as_dims(dims)
    if len(j) != len(spec) or len(l) != len(spec):
        raise ValueError("index tuples must match the number of subsystems")
    return tuple((a + b) % d for a, b, d in zip(j, l, spec.dims))


@dataclass(frozen=True, eq=False)
class SpinCoefficients:
    """Spin-basis coefficients of a state, indexed (flat j, flat l)."""

    dims: DimensionSpec
    s: np.ndarray


def fourier_matrix(d: int) -> np.ndarray:
    """The d x d table exp(2*pi*i*j*l/d). Symmetric; F @ conj(F) = d*I."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    j = np.arange(d)
    return np.exp(2j * np.pi * np.outer(j, j) / d)


def adjusted_basis_element(d: int, j: int, l: int) -> np.ndarray:
    """Matrix unit with a single 1 at row j, column (j + l) mod d."""
    if not (0 <= j < d and 0 <= l < d):
        raise ValueError(f"indices ({j}, {l}) out of range for dimension {d}")
    a = np.zeros((d, d), dtype=np.complex128)
    a[j, (j + l) % d] = 1.0
    return a


def spin_matrix(d: int, j: int, l: int) -> np.ndarray:
    """Generalized spin matrix: sum over m of F(j, m) * A(m, l).

    Exactly one unit-modulus entry per row and column; trace d when
    (j, l) = (0, 0), zero otherwise.
    """
    if not (0 <= j < d and 0 <= l < d):
        raise ValueError(f"indices ({j}, {l}) out of range for dimension {d}")
    s = np.zeros((d, d), dtype=np.complex128)
    for m in range(d):
        s[m, (m + l) % d] = np.exp(2j * np.pi * j * m / d)
    return s


def spin_matrix_multi(dims: DimensionSpec | Iterable[int], j: Sequence[int], l: Sequence[int]) -> np.ndarray:
    """Kronecker product of per-subsystem spin matrices, left to right."""
    spec = as_dims(dims)
    if len(j) != len(spec) or len(l) != len(spec):
        raise ValueError("index tuples must match the number of subsystems")
    out = np.array([[1.0 + 0j]])
    for d, jk, lk in zip(spec.dims, j, l):
        out = kron(out, spin_matrix(d, jk, lk))
    return out


def to_adjusted(rho: DensityMatrix) -> np.ndarray:
    """The adjusted array a[j, l] = rho[j, j (+) l] (pure reindexing)."""
    return kernels.adjusted_from_density(rho.matrix, rho.dims.dims)


def to_spin_coeffs(rho: DensityMatrix) -> SpinCoefficients:
    """Spin coefficients of a state; the (0, 0) entry equals Tr[rho] = 1."""
    return SpinCoefficients(rho.dims, kernels.spin_from_density(rho.matrix, rho.dims.dims))


def from_spin_coeffs(coeffs: SpinCoefficients) -> DensityMatrix:
    """Invert the transform and validate the result as a state.

    Coefficient arrays that do not represent a state raise the matching
    validation error (for example ``TraceNotOneError`` or ``NotPSDError``)
    rather than being clamped.
    """
    n = coeffs.dims.total
    s = np.asarray(coeffs.s, dtype=np.complex128)
    if s.shape != (n, n):
        raise ValueError(f"coefficient array shape {s.shape} does not match dims {coeffs.dims.dims}")
    matrix = kernels.density_from_spin(s, coeffs.dims.dims)
    return validate_density(matrix, coeffs.dims)


def parseval_residual(rho: DensityMatrix) -> float:
    """|sum |s|^2 - N * sum |rho|^2|; zero for every state up to rounding."""
    s = kernels.spin_from_density(rho.matrix, rho.dims.dims)
    return abs(kernels.purity(s) - rho.n * kernels.purity(rho.matrix))
