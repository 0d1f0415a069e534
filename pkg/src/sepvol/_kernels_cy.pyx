# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the per-state hot kernels.

Same contract as ``_kernels_py`` (see that module for the index
conventions). These sit inside the Monte Carlo certification loop, so the
transforms and index reshuffles are plain C loops over small dense
complex arrays; only twiddle-factor tables are built with NumPy.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

ctypedef double complex cplx

BACKEND_NAME = "cython"


def _strides_of(dims):
    n = len(dims)
    out = np.ones(n, dtype=np.int64)
    for k in range(n - 2, -1, -1):
        out[k] = out[k + 1] * dims[k + 1]
    return out


cdef void _dft_component(cplx[:, ::1] x, cplx[:, ::1] w, Py_ssize_t d,
                         Py_ssize_t step, Py_ssize_t nblk, cplx *buf) noexcept nogil:
    cdef Py_ssize_t col, blk, inner, m, j, base
    cdef Py_ssize_t ncols = x.shape[1]
    cdef cplx acc
    for col in range(ncols):
        for blk in range(nblk):
            for inner in range(step):
                base = blk * d * step + inner
                for m in range(d):
                    buf[m] = x[base + m * step, col]
                for j in range(d):
                    acc = 0
                    for m in range(d):
                        acc = acc + w[j, m] * buf[m]
                    x[base + j * step, col] = acc


def _mdft_axis0(cnp.ndarray[cplx, ndim=2] x, dims, bint conjugate):
    """In-place per-component DFT along axis 0 of a C-contiguous array."""
    cdef Py_ssize_t n = len(dims)
    cdef Py_ssize_t N = x.shape[0]
    cdef Py_ssize_t k, d, step, nblk
    cdef double sign = -1.0 if conjugate else 1.0
    strides = _strides_of(dims)
    buf_np = np.empty(max(dims), dtype=np.complex128)
    cdef cplx[::1] buf = buf_np
    cdef cplx[:, ::1] xv = x
    cdef cplx[:, ::1] w
    for k in range(n):
        d = dims[k]
        if d == 1:
            continue
        step = strides[k]
        nblk = N // (d * step)
        grid = np.arange(d)
        w_np = np.ascontiguousarray(
            np.exp(sign * 2j * np.pi * np.outer(grid, grid) / d))
        w = w_np
        with nogil:
            _dft_component(xv, w, d, step, nblk, &buf[0])
    return x


cdef inline Py_ssize_t _shifted_col(Py_ssize_t j, Py_ssize_t l, cnp.int64_t *dims,
                                    cnp.int64_t *strides, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t k, out = 0
    for k in range(n):
        out += (((j // strides[k]) % dims[k] + (l // strides[k]) % dims[k])
                % dims[k]) * strides[k]
    return out


def adjusted_from_density(cplx[:, ::1] rho not None, dims):
    """a[j, l] = rho[j, j (+) l] -- a pure reindexing, no arithmetic."""
    cdef Py_ssize_t N = rho.shape[0]
    cdef Py_ssize_t n = len(dims)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] dd = np.asarray(dims, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ss = _strides_of(dims)
    a_np = np.empty((N, N), dtype=np.complex128)
    cdef cplx[:, ::1] a = a_np
    cdef Py_ssize_t j, l
    with nogil:
        for j in range(N):
            for l in range(N):
                a[j, l] = rho[j, _shifted_col(j, l, &dd[0], &ss[0], n)]
    return a_np


def density_from_adjusted(cplx[:, ::1] a not None, dims):
    cdef Py_ssize_t N = a.shape[0]
    cdef Py_ssize_t n = len(dims)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] dd = np.asarray(dims, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ss = _strides_of(dims)
    rho_np = np.empty((N, N), dtype=np.complex128)
    cdef cplx[:, ::1] rho = rho_np
    cdef Py_ssize_t j, l
    with nogil:
        for j in range(N):
            for l in range(N):
                rho[j, _shifted_col(j, l, &dd[0], &ss[0], n)] = a[j, l]
    return rho_np


def spin_from_density(rho, dims):
    """Spin coefficients: conjugated multi-component DFT of the adjusted array."""
    a = adjusted_from_density(np.ascontiguousarray(rho, dtype=np.complex128), dims)
    return _mdft_axis0(a, dims, True)


def density_from_spin(s, dims):
    scratch = np.array(s, dtype=np.complex128, order="C", copy=True)
    _mdft_axis0(scratch, dims, False)
    scratch /= scratch.shape[0]
    return density_from_adjusted(scratch, dims)


def l1_spin_norm(rho, dims):
    """Sum of spin-coefficient magnitudes, excluding the (0, 0) entry."""
    s_np = spin_from_density(rho, dims)
    cdef cplx[:, ::1] s = s_np
    cdef Py_ssize_t i, j, N = s.shape[0]
    cdef double acc = 0.0
    cdef cplx z
    with nogil:
        for i in range(N):
            for j in range(N):
                z = s[i, j]
                acc += sqrt(z.real * z.real + z.imag * z.imag)
        z = s[0, 0]
        acc -= sqrt(z.real * z.real + z.imag * z.imag)
    return acc


def purity(cplx[:, ::1] m not None):
    """Sum of squared entry magnitudes; equals Tr[m^2] for Hermitian m."""
    cdef Py_ssize_t i, j
    cdef double acc = 0.0
    cdef cplx z
    with nogil:
        for i in range(m.shape[0]):
            for j in range(m.shape[1]):
                z = m[i, j]
                acc += z.real * z.real + z.imag * z.imag
    return acc


def partial_transpose(cplx[:, ::1] m not None, dims, Py_ssize_t sys):
    cdef Py_ssize_t N = m.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ss = _strides_of(dims)
    cdef Py_ssize_t d = dims[sys]
    cdef Py_ssize_t step = ss[sys]
    out_np = np.empty((N, N), dtype=np.complex128)
    cdef cplx[:, ::1] out = out_np
    cdef Py_ssize_t r, c, rk, ck
    with nogil:
        for r in range(N):
            rk = (r // step) % d
            for c in range(N):
                ck = (c // step) % d
                out[r, c] = m[r + (ck - rk) * step, c + (rk - ck) * step]
    return out_np


def partial_trace(cplx[:, ::1] m not None, dims, keep):
    cdef Py_ssize_t n = len(dims)
    keep = tuple(sorted(keep))
    traced = tuple(k for k in range(n) if k not in keep)
    full_strides = _strides_of(dims)

    def _offsets(subsys):
        if not subsys:
            return np.zeros(1, dtype=np.int64)
        sub_dims = [dims[k] for k in subsys]
        parts = np.indices(sub_dims).reshape(len(sub_dims), -1)
        return np.ascontiguousarray(
            (parts * full_strides[list(subsys)][:, None]).sum(axis=0))

    cdef cnp.ndarray[cnp.int64_t, ndim=1] off_keep = _offsets(keep)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] off_tr = _offsets(traced)
    cdef Py_ssize_t nk = off_keep.shape[0]
    cdef Py_ssize_t nt = off_tr.shape[0]
    out_np = np.zeros((nk, nk), dtype=np.complex128)
    cdef cplx[:, ::1] out = out_np
    cdef Py_ssize_t u, v, t
    cdef cplx acc
    with nogil:
        for u in range(nk):
            for v in range(nk):
                acc = 0
                for t in range(nt):
                    acc = acc + m[off_keep[u] + off_tr[t], off_keep[v] + off_tr[t]]
                out[u, v] = acc
    return out_np
