"""Closed-form linear algebra for 2x2 complex matrices.

Everything here is sized exactly for two-component states: eigenpairs come
from the quadratic formula, so degeneracy and defectiveness are detected
analytically through the discriminant instead of through an iterative
solver's behaviour.

Matrices are numpy arrays of shape (2, 2), states of shape (2,), both
complex128. All operations are pure; returned arrays are fresh.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ExceptionalPoint

# Relative eigenvalue gap below which a spectrum counts as degenerate.
DEGENERACY_RTOL = 1e-10

__all__ = [
    "EigenSystem2",
    "BiorthogonalBasis",
    "as_matrix2",
    "as_vector2",
    "adjoint",
    "is_hermitian",
    "eig2",
    "biorthogonal",
    "spectral_radius",
]


def as_matrix2(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix entries must be finite")
    return m


def as_vector2(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape != (2,):
        raise ValueError(f"expected a 2-component vector, got shape {v.shape}")
    if not np.all(np.isfinite(v.view(float))):
        raise ValueError("vector entries must be finite")
    return v


def adjoint(m) -> np.ndarray:
    """Conjugate transpose. An involution: adjoint(adjoint(m)) == m exactly."""
    return as_matrix2(m).conj().T.copy()


def is_hermitian(m, tol: float = 1e-12) -> bool:
    m = as_matrix2(m)
    scale = max(1.0, _norm(m))
    return bool(np.max(np.abs(m - m.conj().T)) <= tol * scale)


def _norm(m: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(m) ** 2)))


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Normalize and rotate so the largest-magnitude component is real positive."""
    v = v / np.sqrt(np.sum(np.abs(v) ** 2))
    k = int(np.argmax(np.abs(v)))
    phase = v[k] / abs(v[k])
    return v * phase.conjugate()


@dataclass(frozen=True)
class EigenSystem2:
    """Spectrum of a 2x2 matrix, ordered by descending Re then descending Im.

    `degenerate` marks a coinciding pair; `defective` additionally marks the
    loss of the second eigenvector (both vector slots then hold the same
    direction).
    """

    eigenvalue1: complex
    eigenvalue2: complex
    eigenvector1: np.ndarray
    eigenvector2: np.ndarray
    degenerate: bool
    defective: bool = False

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([self.eigenvalue1, self.eigenvalue2])


def eig2(m) -> EigenSystem2:
    """Eigendecomposition via the quadratic formula.

    Eigenvectors are unit norm with a deterministic phase (largest component
    real positive). A defective matrix is reported through the flags, with
    the single eigenvector repeated, rather than through an exception.
    """
    m = as_matrix2(m)
    tr = m[0, 0] + m[1, 1]
    # (h11 - h22)^2 + 4 h12 h21 equals tr^2 - 4 det without the cancellation
    # of the common diagonal part, so a coalescence is detected exactly.
    diff = m[0, 0] - m[1, 1]
    disc = diff * diff + 4.0 * m[0, 1] * m[1, 0]
    sq = np.sqrt(complex(disc))
    la, lb = (tr + sq) / 2.0, (tr - sq) / 2.0
    if (la.real, la.imag) < (lb.real, lb.imag):
        la, lb = lb, la

    scale = max(1.0, _norm(m))
    degenerate = abs(la - lb) < DEGENERACY_RTOL * scale

    if degenerate:
        shifted = m - ((la + lb) / 2.0) * np.eye(2)
        if _norm(shifted) <= DEGENERACY_RTOL * scale:
            # Scalar matrix: full eigenspace, pick the canonical basis.
            e1 = np.array([1.0 + 0j, 0.0 + 0j])
            e2 = np.array([0.0 + 0j, 1.0 + 0j])
            return EigenSystem2(la, lb, e1, e2, True, False)
        v = _null_vector(shifted)
        return EigenSystem2(la, lb, v, v.copy(), True, True)

    v1 = _null_vector(m - la * np.eye(2))
    v2 = _null_vector(m - lb * np.eye(2))
    return EigenSystem2(la, lb, v1, v2, False, False)


def _null_vector(s: np.ndarray) -> np.ndarray:
    # Both rows of a singular 2x2 are parallel; the larger one is the
    # better-conditioned normal direction.
    r0 = s[0]
    r1 = s[1]
    row = r0 if np.sum(np.abs(r0) ** 2) >= np.sum(np.abs(r1) ** 2) else r1
    v = np.array([-row[1], row[0]])
    return _fix_phase(v)


@dataclass(frozen=True)
class BiorthogonalBasis:
    """Right/left eigenvector pairs with <left_n|right_m> = delta_nm.

    Left vectors are rescaled so the diagonal products are exactly 1.
    """

    right1: np.ndarray
    right2: np.ndarray
    left1: np.ndarray
    left2: np.ndarray
    eigenvalue1: complex
    eigenvalue2: complex

    def overlap_matrix(self) -> np.ndarray:
        lefts = (self.left1, self.left2)
        rights = (self.right1, self.right2)
        return np.array([[np.vdot(l, r) for r in rights] for l in lefts])


def biorthogonal(m) -> BiorthogonalBasis:
    """Biorthogonal eigenbasis of a non-defective matrix.

    Right vectors are eigenvectors of m; left vectors are eigenvectors of
    adjoint(m), matched through conjugate eigenvalues and rescaled so
    <left_n|right_n> = 1.

    Raises ExceptionalPoint if the matrix is defective (or too close to it
    for the pairing to be meaningful).
    """
    m = as_matrix2(m)
    es = eig2(m)
    if es.degenerate and es.defective:
        raise ExceptionalPoint(
            "matrix is defective: eigenvectors coalesce, no biorthogonal basis"
        )
    if es.degenerate:
        # Scalar matrix: the basis is the orthonormal eigenbasis itself.
        return BiorthogonalBasis(
            es.eigenvector1,
            es.eigenvector2,
            es.eigenvector1.copy(),
            es.eigenvector2.copy(),
            es.eigenvalue1,
            es.eigenvalue2,
        )

    es_adj = eig2(adjoint(m))
    # The adjoint's spectrum is the conjugate one; match each left vector to
    # the right eigenvalue it annihilates against.
    if abs(es_adj.eigenvalue1 - es.eigenvalue1.conjugate()) <= abs(
        es_adj.eigenvalue1 - es.eigenvalue2.conjugate()
    ):
        left1, left2 = es_adj.eigenvector1, es_adj.eigenvector2
    else:
        left1, left2 = es_adj.eigenvector2, es_adj.eigenvector1

    d1 = np.vdot(left1, es.eigenvector1)
    d2 = np.vdot(left2, es.eigenvector2)
    if min(abs(d1), abs(d2)) < 1e-12:
        raise ExceptionalPoint("left/right overlap vanishes: at an exceptional point")
    left1 = left1 / d1.conjugate()
    left2 = left2 / d2.conjugate()
    return BiorthogonalBasis(
        es.eigenvector1, es.eigenvector2, left1, left2, es.eigenvalue1, es.eigenvalue2
    )


def spectral_radius(m) -> float:
    es = eig2(m)
    return max(abs(es.eigenvalue1), abs(es.eigenvalue2))
