"""NumPy implementations of the per-state hot kernels.

This is the pure-Python backend. The compiled extension ``_kernels_cy``
implements the identical contract; ``sepvol.kernels`` picks one at import
time. Keep the two in lockstep -- tests/test_kernels.py compares them
element-wise on random inputs.

All functions take a C-contiguous complex128 square matrix plus the tuple
of subsystem dimensions whose product is the matrix size. Subsystem 0 is
the most significant factor of a flat composite index (row-major
flattening, matching the Kronecker-product convention used everywhere in
this package).
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

BACKEND_NAME = "numpy"


@lru_cache(maxsize=128)
def _strides(dims: tuple[int, ...]) -> tuple[int, ...]:
    out = [1] * len(dims)
    for k in range(len(dims) - 2, -1, -1):
        out[k] = out[k + 1] * dims[k + 1]
    return tuple(out)


@lru_cache(maxsize=128)
def _shift_table(dims: tuple[int, ...]) -> np.ndarray:
    """Table of flat(j (+) l), componentwise addition modulo dims. Read-only."""
    parts = np.indices(dims).reshape(len(dims), -1)
    mod = np.asarray(dims).reshape(-1, 1, 1)
    summed = (parts[:, :, None] + parts[:, None, :]) % mod
    strides = np.asarray(_strides(dims)).reshape(-1, 1, 1)
    table = (summed * strides).sum(axis=0)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=64)
def _fourier(d: int) -> np.ndarray:
    j = np.arange(d)
    table = np.exp(2j * np.pi * np.outer(j, j) / d)
    table.setflags(write=False)
    return table


def _dft_axis0(x: np.ndarray, dims: tuple[int, ...], conjugate: bool) -> np.ndarray:
    """Apply the per-component DFT along axis 0, one subsystem at a time."""
    shape = x.shape
    out = x.reshape(dims + (-1,))
    for k, d in enumerate(dims):
        f = _fourier(d)
        if conjugate:
            f = f.conj()
        out = np.moveaxis(np.tensordot(f, out, axes=([1], [k])), 0, k)
    return np.ascontiguousarray(out.reshape(shape))


def adjusted_from_density(rho: np.ndarray, dims: tuple[int, ...]) -> np.ndarray:
    """a[j, l] = rho[j, j (+) l] -- a pure reindexing, no arithmetic."""
    rows = np.arange(rho.shape[0])[:, None]
    return np.ascontiguousarray(rho[rows, _shift_table(dims)])


def density_from_adjusted(a: np.ndarray, dims: tuple[int, ...]) -> np.ndarray:
    rho = np.empty_like(a)
    rows = np.arange(a.shape[0])[:, None]
    rho[rows, _shift_table(dims)] = a
    return rho


def spin_from_density(rho: np.ndarray, dims: tuple[int, ...]) -> np.ndarray:
    """Spin coefficients: conjugated multi-component DFT of the adjusted array."""
    return _dft_axis0(adjusted_from_density(rho, dims), dims, conjugate=True)


def density_from_spin(s: np.ndarray, dims: tuple[int, ...]) -> np.ndarray:
    a = _dft_axis0(s, dims, conjugate=False) / s.shape[0]
    return density_from_adjusted(a, dims)


def l1_spin_norm(rho: np.ndarray, dims: tuple[int, ...]) -> float:
    """Sum of spin-coefficient magnitudes, excluding the (0, 0) entry."""
    s = spin_from_density(rho, dims)
    return float(np.abs(s).sum() - abs(s[0, 0]))


def purity(m: np.ndarray) -> float:
    """Sum of squared entry magnitudes; equals Tr[m^2] for Hermitian m."""
    return float(np.vdot(m, m).real)


def partial_transpose(m: np.ndarray, dims: tuple[int, ...], sys: int) -> np.ndarray:
    n = len(dims)
    t = m.reshape(dims + dims)
    t = t.swapaxes(sys, n + sys)
    return np.ascontiguousarray(t.reshape(m.shape))


def partial_trace(m: np.ndarray, dims: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
    n = len(dims)
    keep = tuple(sorted(keep))
    t = m.reshape(dims + dims)
    row_labels = list(range(n))
    col_labels = [n + k if k in keep else k for k in range(n)]
    out_labels = [k for k in keep] + [n + k for k in keep]
    reduced = np.einsum(t, row_labels + col_labels, out_labels)
    nk = math.prod(dims[k] for k in keep)
    return np.ascontiguousarray(reduced.reshape(nk, nk))
