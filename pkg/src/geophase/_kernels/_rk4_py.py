"""numpy fallback for the compiled RK4 kernels.

For a constant linear system s' = M s the classical RK4 update is exactly
the quartic Taylor propagator

    R = I + hM + (hM)^2/2 + (hM)^3/6 + (hM)^4/24,

so the whole step collapses to one matrix-vector product. Applying R**stride
per recorded sample keeps the Python-level loop short while producing the
same scheme (same order, same stability region) as the staged kernel.
"""

from __future__ import annotations

import numpy as np


def _propagator(mat: np.ndarray, step: float) -> np.ndarray:
    dim = mat.shape[0]
    hm = step * mat
    r = np.eye(dim, dtype=mat.dtype)
    term = np.eye(dim, dtype=mat.dtype)
    for k in (1, 2, 3, 4):
        term = term @ hm / k
        r = r + term
    return r


def _run(mat: np.ndarray, state0: np.ndarray, step: float,
         n_records: int, stride: int) -> np.ndarray:
    dim = mat.shape[0]
    if mat.shape != (dim, dim) or state0.shape != (dim,):
        raise ValueError("matrix/state dimensions disagree")
    if n_records < 1 or stride < 1:
        raise ValueError("n_records and stride must be >= 1")
    r_block = np.linalg.matrix_power(_propagator(mat, step), stride)
    out = np.empty((n_records, dim), dtype=mat.dtype)
    out[0] = state0
    s = state0.copy()
    for rec in range(1, n_records):
        s = r_block @ s
        out[rec] = s
    return out


def rk4_real(mat, state0, step, n_records, stride):
    mat = np.ascontiguousarray(mat, dtype=np.float64)
    state0 = np.ascontiguousarray(state0, dtype=np.float64)
    return _run(mat, state0, step, int(n_records), int(stride))


def rk4_cplx(mat, state0, step, n_records, stride):
    mat = np.ascontiguousarray(mat, dtype=np.complex128)
    state0 = np.ascontiguousarray(state0, dtype=np.complex128)
    return _run(mat, state0, step, int(n_records), int(stride))
