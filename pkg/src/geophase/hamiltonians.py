"""Builders and classifiers for the two-level operator families.

Every operator is kept in split form H = M - i*G with M, G hermitian: M is
the oscillatory part, G drives probability gain/loss. The three structural
cases are hermitian (G = 0), uniform decay (G = s*I) and the balanced
gain/loss dimer (G = diag(-s, s)).

The parity used for PT checks is site exchange, P = [[0, 1], [1, 0]],
combined with complex conjugation as time reversal. Site exchange is the
standard dimer parity; it is a convention of this package, not a derived
quantity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import complex_linalg as cl
from .errors import NonPositiveRate

HERMITIAN = "hermitian"
UNIFORM_DECAY = "uniform_decay"
PT_DIMER = "pt_dimer"
GENERAL = "general"

UNBROKEN = "unbroken"
BROKEN = "broken"
EXCEPTIONAL = "exceptional"

DECAYING = "decaying"
CONSERVING = "conserving"
INDEFINITE = "indefinite"

PARITY = np.array([[0.0, 1.0], [1.0, 0.0]])

__all__ = [
    "EffectiveHamiltonian",
    "PTDimerParams",
    "HermitianEqualDiagonal",
    "build_hermitian",
    "build_uniform_decay",
    "build_pt_dimer",
    "pt_operator",
    "apply_pt",
    "pt_symmetry_check",
    "gamma_spectrum",
]


@dataclass(frozen=True)
class EffectiveHamiltonian:
    """H = m - i*gamma with both parts hermitian."""

    m: np.ndarray
    gamma: np.ndarray
    kind: str

    def __post_init__(self):
        m = cl.as_matrix2(self.m)
        g = cl.as_matrix2(self.gamma)
        if not cl.is_hermitian(m) or not cl.is_hermitian(g):
            raise ValueError("both split parts must be hermitian")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "gamma", g)

    @property
    def matrix(self) -> np.ndarray:
        return self.m - 1j * self.gamma

    def eig(self) -> cl.EigenSystem2:
        return cl.eig2(self.matrix)


@dataclass(frozen=True)
class PTDimerParams:
    """Gain/loss dimer: diagonal energy a, coupling g > 0, rate s >= 0."""

    a: float
    g: float
    s: float

    def __post_init__(self):
        if not (self.g > 0):
            raise ValueError("coupling g must be positive")
        if self.s < 0:
            raise ValueError("gain/loss rate s must be nonnegative")

    @property
    def gamma_ratio(self) -> float:
        return self.s / self.g

    @property
    def unbroken(self) -> bool:
        return self.gamma_ratio < 1.0

    @property
    def broken(self) -> bool:
        return self.gamma_ratio > 1.0

    @property
    def exceptional(self) -> bool:
        return abs(self.gamma_ratio - 1.0) < 1e-12


@dataclass(frozen=True)
class HermitianEqualDiagonal:
    """H = [[h, f - i g], [f + i g, h]]."""

    h: float
    f: float
    g: float = 0.0


def build_hermitian(p: HermitianEqualDiagonal) -> EffectiveHamiltonian:
    m = np.array(
        [[p.h, p.f - 1j * p.g], [p.f + 1j * p.g, p.h]], dtype=complex
    )
    return EffectiveHamiltonian(m=m, gamma=np.zeros((2, 2), dtype=complex), kind=HERMITIAN)


def build_uniform_decay(h, s: float) -> EffectiveHamiltonian:
    """Hermitian h with uniform loss: G = s*I, s > 0."""
    h = cl.as_matrix2(h)
    if not cl.is_hermitian(h):
        raise ValueError("oscillatory part must be hermitian")
    if s <= 0:
        raise NonPositiveRate(f"decay rate must be positive, got {s}")
    return EffectiveHamiltonian(m=h, gamma=s * np.eye(2, dtype=complex), kind=UNIFORM_DECAY)


def build_pt_dimer(p: PTDimerParams) -> EffectiveHamiltonian:
    m = np.array([[p.a, -1j * p.g], [1j * p.g, p.a]], dtype=complex)
    gamma = np.array([[-p.s, 0.0], [0.0, p.s]], dtype=complex)
    return EffectiveHamiltonian(m=m, gamma=gamma, kind=PT_DIMER)


def pt_operator() -> tuple[np.ndarray, bool]:
    """The antilinear symmetry map v -> P conj(v).

    Returns the parity matrix (site exchange) and a flag reminding callers
    that the map conjugates its argument.
    """
    return PARITY.copy(), True


def apply_pt(v) -> np.ndarray:
    v = cl.as_vector2(v)
    return PARITY @ v.conj()


def _same_up_to_phase(v, w, tol: float) -> bool:
    # Unit vectors are equal up to a global phase iff |<v|w>| = 1.
    return abs(1.0 - abs(np.vdot(v, w))) < tol


def pt_symmetry_check(h: EffectiveHamiltonian, phase_tol: float = 1e-8) -> dict:
    """Commutation test plus the realization of the symmetry on eigenvectors.

    symmetric: P conj(H) P == H entrywise (the antilinear commutation
    identity). realization: 'unbroken' when each eigenvector is PT-invariant
    up to phase, 'broken' when PT swaps the two eigenvectors, 'exceptional'
    at the coalescence; None when the operator is not PT-symmetric at all.
    """
    mat = h.matrix
    commuted = PARITY @ mat.conj() @ PARITY
    scale = max(1.0, float(np.sqrt(np.sum(np.abs(mat) ** 2))))
    symmetric = bool(np.max(np.abs(commuted - mat)) <= 1e-12 * scale)
    if not symmetric:
        return {"symmetric": False, "realization": None}

    es = cl.eig2(mat)
    if es.degenerate:
        return {"symmetric": True, "realization": EXCEPTIONAL}

    pt1 = apply_pt(es.eigenvector1)
    pt2 = apply_pt(es.eigenvector2)
    if _same_up_to_phase(pt1, es.eigenvector1, phase_tol) and _same_up_to_phase(
        pt2, es.eigenvector2, phase_tol
    ):
        return {"symmetric": True, "realization": UNBROKEN}
    if _same_up_to_phase(pt1, es.eigenvector2, phase_tol) and _same_up_to_phase(
        pt2, es.eigenvector1, phase_tol
    ):
        return {"symmetric": True, "realization": BROKEN}
    return {"symmetric": True, "realization": None}


def gamma_spectrum(h: EffectiveHamiltonian) -> dict:
    """Trace/determinant of the loss part and the resulting norm behaviour.

    decaying: both eigenvalues of G positive (trace > 0, det > 0).
    conserving: trace zero with det <= 0 (balanced gain/loss, or G = 0).
    indefinite: anything else.
    """
    g = h.gamma
    trace = float((g[0, 0] + g[1, 1]).real)
    det = float((g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]).real)
    scale = max(1.0, float(np.sqrt(np.sum(np.abs(g) ** 2))))
    tol = 1e-12 * scale
    if trace > tol and det > tol:
        decay_class = DECAYING
    elif abs(trace) <= tol and det <= tol:
        decay_class = CONSERVING
    else:
        decay_class = INDEFINITE
    return {"trace": trace, "det": det, "decay_class": decay_class}
