# cython: boundscheck=False, wraparound=False, cdivision=True
"""Fixed-step classical RK4 for small constant-coefficient linear systems.

One C loop per trajectory; dimensions up to 8 are unrolled onto the stack.
The Python fallback in _rk4_py mirrors these entry points exactly.
"""

import numpy as np

cimport cython

DEF MAXDIM = 8


def rk4_real(double[:, ::1] mat, double[::1] state0, double step,
             Py_ssize_t n_records, Py_ssize_t stride):
    """Propagate s' = mat @ s, recording every `stride`-th step.

    Returns an (n_records, dim) array whose first row is state0.
    """
    cdef Py_ssize_t dim = mat.shape[0]
    if mat.shape[1] != dim or state0.shape[0] != dim:
        raise ValueError("matrix/state dimensions disagree")
    if dim > MAXDIM:
        raise ValueError("compiled kernel supports dimensions up to 8")
    if n_records < 1 or stride < 1:
        raise ValueError("n_records and stride must be >= 1")

    out = np.empty((n_records, dim), dtype=np.float64)
    cdef double[:, ::1] out_v = out
    cdef double s[MAXDIM]
    cdef double k1[MAXDIM]
    cdef double k2[MAXDIM]
    cdef double k3[MAXDIM]
    cdef double k4[MAXDIM]
    cdef double tmp[MAXDIM]
    cdef Py_ssize_t i, j, rec, sub
    cdef double h = step, h2 = 0.5 * step, h6 = step / 6.0
    cdef double acc

    for i in range(dim):
        s[i] = state0[i]
        out_v[0, i] = s[i]

    for rec in range(1, n_records):
        for sub in range(stride):
            for i in range(dim):
                acc = 0.0
                for j in range(dim):
                    acc += mat[i, j] * s[j]
                k1[i] = acc
            for i in range(dim):
                tmp[i] = s[i] + h2 * k1[i]
            for i in range(dim):
                acc = 0.0
                for j in range(dim):
                    acc += mat[i, j] * tmp[j]
                k2[i] = acc
            for i in range(dim):
                tmp[i] = s[i] + h2 * k2[i]
            for i in range(dim):
                acc = 0.0
                for j in range(dim):
                    acc += mat[i, j] * tmp[j]
                k3[i] = acc
            for i in range(dim):
                tmp[i] = s[i] + h * k3[i]
            for i in range(dim):
                acc = 0.0
                for j in range(dim):
                    acc += mat[i, j] * tmp[j]
                k4[i] = acc
            for i in range(dim):
                s[i] = s[i] + h6 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
        for i in range(dim):
            out_v[rec, i] = s[i]
    return out


def rk4_cplx(double complex[:, ::1] mat, double complex[::1] state0, double step,
             Py_ssize_t n_records, Py_ssize_t stride):
    """Complex counterpart of rk4_real."""
    cdef Py_ssize_t dim = mat.shape[0]
    if mat.shape[1] != dim or state0.shape[0] != dim:
        raise ValueError("matrix/state dimensions disagree")
    if dim > MAXDIM:
        raise ValueError("compiled kernel supports dimensions up to 8")
    if n_records < 1 or stride < 1:
        raise ValueError("n_records and stride must be >= 1")

    out = np.empty((n_records, dim), dtype=np.complex128)
    cdef double complex[:, ::1] out_v = out
    cdef double complex s[MAXDIM]
    cdef double complex k1[MAXDIM]
    cdef double complex k2[MAXDIM]
    cdef double complex k3[MAXDIM]
    cdef double complex k4[MAXDIM]
    cdef double complex tmp[MAXDIM]
    cdef Py_ssize_t i, j, rec, sub
    cdef double h = step, h2 = 0.5 * step, h6 = step / 6.0
    cdef double complex acc

    for i in range(dim):
        s[i] = state0[i]
        out_v[0, i] = s[i]

    for rec in range(1, n_records):
        for sub in range(stride):
            for i in range(dim):
                acc = 0.0
                for j in range(dim):
                    acc = acc + mat[i, j] * s[j]
                k1[i] = acc
            for i in range(dim):
                tmp[i] = s[i] + h2 * k1[i]
            for i in range(dim):
                acc = 0.0
                for j in range(dim):
                    acc = acc + mat[i, j] * tmp[j]
                k2[i] = acc
            for i in range(dim):
                tmp[i] = s[i] + h2 * k2[i]
            for i in range(dim):
                acc = 0.0
                for j in range(dim):
                    acc = acc + mat[i, j] * tmp[j]
                k3[i] = acc
            for i in range(dim):
                tmp[i] = s[i] + h * k3[i]
            for i in range(dim):
                acc = 0.0
                for j in range(dim):
                    acc = acc + mat[i, j] * tmp[j]
                k4[i] = acc
            for i in range(dim):
                s[i] = s[i] + h6 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
        for i in range(dim):
            out_v[rec, i] = s[i]
    return out
