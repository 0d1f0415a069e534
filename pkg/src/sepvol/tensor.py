"""Dense complex linear algebra shared by every other module.

States are plain complex128 NumPy arrays wrapped in :class:`DensityMatrix`
together with the tuple of subsystem dimensions. Composite indices are
flattened row-major with subsystem 0 most significant, which is exactly
the convention of ``numpy.kron`` applied left to right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10


class StateValidationError(ValueError):
    """A matrix failed one of the density-matrix invariants.

    ``residual`` holds the measured size of the violation.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = float(residual)


class SizeMismatchError(StateValidationError):
    pass


class NotHermitianError(StateValidationError):
    pass


class TraceNotOneError(StateValidationError):
    pass


class NotPSDError(StateValidationError):
    pass


@dataclass(frozen=True)
class DimensionSpec:
    """Ordered subsystem dimensions (d_1, ..., d_n); the composite size is
    their product."""

    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.dims) == 0:
            raise ValueError("dims must contain at least one subsystem")
        if any(int(d) != d or d < 1 for d in self.dims):
            raise ValueError(f"subsystem dimensions must be integers >= 1, got {self.dims}")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def total(self) -> int:
        return math.prod(self.dims)

    def __len__(self) -> int:
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)


def as_dims(dims: DimensionSpec | Iterable[int]) -> DimensionSpec:
    if isinstance(dims, DimensionSpec):
        return dims
    return DimensionSpec(tuple(dims))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated state: Hermitian, PSD, unit-trace complex matrix plus its
    subsystem structure.

    Construct through :func:`validate_density` (or
    :meth:`DensityMatrix.from_matrix`); the samplers build instances
    directly because their output is a state by construction.
    """

    dims: DimensionSpec
    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, dims: DimensionSpec | Iterable[int]) -> "DensityMatrix":
        return validate_density(matrix, dims)


def validate_density(matrix: np.ndarray, dims: DimensionSpec | Iterable[int]) -> DensityMatrix:
    """Check the density-matrix invariants and wrap the matrix.

    Raises :class:`SizeMismatchError`, :class:`NotHermitianError`,
    :class:`TraceNotOneError` or :class:`NotPSDError`, each carrying the
    measured residual.
    """
    spec = as_dims(dims)
    m = np.ascontiguousarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != spec.total:
        raise SizeMismatchError(
            f"expected a {spec.total}x{spec.total} matrix for dims {spec.dims}, got shape {m.shape}",
            residual=0.0,
        )
    herm = float(np.abs(m - m.conj().T).max())
    if herm > HERMITICITY_TOL:
        raise NotHermitianError(f"hermiticity residual {herm:.3e} exceeds {HERMITICITY_TOL:.0e}", herm)
    tr = complex(np.trace(m))
    tr_err = abs(tr - 1.0)
    if tr_err > TRACE_TOL:
        raise TraceNotOneError(f"trace {tr.real:.12g} differs from 1 by {tr_err:.3e}", tr_err)
    min_eig = float(np.linalg.eigvalsh(m)[0])
    if min_eig < -PSD_TOL:
        raise NotPSDError(f"minimum eigenvalue {min_eig:.3e} below -{PSD_TOL:.0e}", -min_eig)
    return DensityMatrix(spec, m)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the left factor most significant:
    result[i_a*r_b + i_b, j_a*c_b + j_b] = a[i_a, j_a] * b[i_b, j_b]."""
    return np.kron(a, b)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> np.ndarray:
    """Trace out every subsystem not in ``keep`` (0-based indices).

    ``keep`` must be a nonempty proper subset of the subsystems.
    """
    keep = tuple(sorted(set(int(k) for k in keep)))
    n = len(rho.dims)
    if not keep or len(keep) == n:
        raise ValueError("keep must be a nonempty proper subset of the subsystems")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"subsystem indices out of range for {n} subsystems: {keep}")
    return kernels.partial_trace(rho.matrix, rho.dims.dims, keep)


def partial_transpose(rho: DensityMatrix, subsystem: int) -> np.ndarray:
    """Transpose the indices of one subsystem (0-based) only."""
    n = len(rho.dims)
    if not 0 <= subsystem < n:
        raise ValueError(f"subsystem {subsystem} out of range for {n} subsystems")
    return kernels.partial_transpose(rho.matrix, rho.dims.dims, subsystem)


def hermitian_eigenvalues(m: np.ndarray) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    herm = float(np.abs(m - m.conj().T).max())
    if herm > HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian (residual {herm:.3e})")
    return np.linalg.eigvalsh(m)


def purity(rho: DensityMatrix) -> float:
    """Tr[rho^2], computed as the sum of squared entry magnitudes."""
    return kernels.purity(rho.matrix)
