# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled basis-expansion kernels.

Same contract as ``hdann._kernels_py``. Powers use a running product and
cosines use the Chebyshev three-term recurrence, so each entry costs one
``cos``/``sin`` call regardless of q.
"""

import numpy as np
from libc.math cimport cos, sin, sqrt, M_PI


DEF POLY = 0
DEF COS = 1
DEF HAAR = 2


cdef inline double _haar(double x, Py_ssize_t r) noexcept nogil:
    cdef Py_ssize_t m, j, k, scale
    cdef double t
    if r == 1:
        return 1.0
    m = r - 1
    j = 0
    while (m >> (j + 1)) > 0:
        j += 1
    k = m - (1 << j)
    scale = 1 << j
    if x >= 1.0:
        if k == scale - 1:
            return -sqrt(<double>scale)
        return 0.0
    t = x * scale - k
    if t >= 0.0 and t < 0.5:
        return sqrt(<double>scale)
    if t >= 0.5 and t < 1.0:
        return -sqrt(<double>scale)
    return 0.0


def basis_expand(int family, x, Py_ssize_t q, bint with_deriv=True):
    """Evaluate B_1..B_q (and derivatives) at every entry of ``x``."""
    if family < 0 or family > 2:
        raise ValueError(f"unknown basis family code {family}")
    arr = np.ascontiguousarray(x, dtype=np.float64)
    shape = arr.shape
    cdef double[::1] xf = arr.reshape(-1)
    cdef Py_ssize_t n = xf.shape[0]
    vals_arr = np.empty((n, q), dtype=np.float64)
    cdef double[:, ::1] vals = vals_arr
    cdef double[:, ::1] der
    deriv_arr = None
    if with_deriv:
        deriv_arr = np.zeros((n, q), dtype=np.float64)
        der = deriv_arr
    cdef Py_ssize_t i, r
    cdef double xi, p, c0, c1, c2, s0, s1, s2, c, s
    with nogil:
        for i in range(n):
            xi = xf[i]
            if family == POLY:
                p = 1.0
                for r in range(q):
                    if with_deriv:
                        der[i, r] = (r + 1) * p
                    p = p * xi
                    vals[i, r] = p
            elif family == COS:
                c = cos(M_PI * xi)
                s = sin(M_PI * xi)
                c0 = 1.0
                c1 = c
                s0 = 0.0
                s1 = s
                for r in range(q):
                    vals[i, r] = c1
                    if with_deriv:
                        der[i, r] = -M_PI * (r + 1) * s1
                    c2 = 2.0 * c * c1 - c0
                    s2 = 2.0 * c * s1 - s0
                    c0 = c1
                    c1 = c2
                    s0 = s1
                    s1 = s2
            else:
                for r in range(q):
                    vals[i, r] = _haar(xi, r + 1)
    vals_arr = vals_arr.reshape(shape + (q,))
    if with_deriv:
        deriv_arr = deriv_arr.reshape(shape + (q,))
    return vals_arr, deriv_arr


def input_grad(dphi, dbasis):
    """Contract d(loss)/d(basis value) with dB/dx over the basis axis."""
    a = np.ascontiguousarray(dphi, dtype=np.float64)
    b = np.ascontiguousarray(dbasis, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError("shape mismatch")
    shape = a.shape[: a.ndim - 1]
    cdef Py_ssize_t q = a.shape[a.ndim - 1]
    cdef double[:, ::1] av = a.reshape(-1, q)
    cdef double[:, ::1] bv = b.reshape(-1, q)
    cdef Py_ssize_t n = av.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, r
    cdef double acc
    with nogil:
        for i in range(n):
            acc = 0.0
            for r in range(q):
                acc = acc + av[i, r] * bv[i, r]
            out[i] = acc
    return out_arr.reshape(shape)
