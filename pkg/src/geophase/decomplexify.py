"""The quantum -> classical map for two-component states.

A complex evolution i dPsi/dt = H Psi splits, entrywise, into real matrices
A = Im(H), B = Re(H) and real vectors x = Re(Psi), y = Im(Psi) obeying

    dx/dt = A x + B y
    dy/dt = A y - B x

Stacked as (x1, y1, x2, y2) this is a real 4x4 first-order flow; with B
invertible it also decouples into a second-order oscillator equation

    z'' = (A + B A B^{-1}) z' - (B A B^{-1} A + B B) z

satisfied by x and y alike: (y, -x) solves the same first-order pair, so
the two variable sets share one coefficient pair. The slot for the initial
derivative is not free data: z'(0) comes from the first-order system
(x'(0) = A x0 + B y0, y'(0) = A y0 - B x0).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import complex_linalg as cl
from .errors import SingularB

VAR_X = "x"
VAR_Y = "y"

__all__ = [
    "RealSplit",
    "RealSystem4",
    "SecondOrderSystem",
    "split",
    "real4",
    "second_order",
    "real_state",
    "complex_state",
    "initial_derivative",
]


@dataclass(frozen=True)
class RealSplit:
    """a_mat = Im(H), b_mat = Re(H); H = b_mat + i*a_mat losslessly."""

    a_mat: np.ndarray
    b_mat: np.ndarray

    def reassemble(self) -> np.ndarray:
        return self.b_mat + 1j * self.a_mat


@dataclass(frozen=True)
class RealSystem4:
    """First-order flow matrix on the stacked state (x1, y1, x2, y2)."""

    evo: np.ndarray


@dataclass(frozen=True)
class SecondOrderSystem:
    """Oscillator form z'' = damping @ z' - stiffness @ z."""

    damping: np.ndarray
    stiffness: np.ndarray
    variable_tag: str


def split(h) -> RealSplit:
    h = cl.as_matrix2(h)
    return RealSplit(a_mat=h.imag.copy(), b_mat=h.real.copy())


def real4(h) -> RealSystem4:
    """Assemble the 4x4 flow; rows interleave the (Im, Re) blocks."""
    rs = split(h)
    a, b = rs.a_mat, rs.b_mat
    evo = np.array(
        [
            [a[0, 0], b[0, 0], a[0, 1], b[0, 1]],
            [-b[0, 0], a[0, 0], -b[0, 1], a[0, 1]],
            [a[1, 0], b[1, 0], a[1, 1], b[1, 1]],
            [-b[1, 0], a[1, 0], -b[1, 1], a[1, 1]],
        ]
    )
    return RealSystem4(evo=evo)


def blocks_from_evo(evo: np.ndarray) -> RealSplit:
    """Invert the interleaving; exact because the layout is fixed."""
    a = np.array([[evo[0, 0], evo[0, 2]], [evo[2, 0], evo[2, 2]]])
    b = np.array([[evo[0, 1], evo[0, 3]], [evo[2, 1], evo[2, 3]]])
    return RealSplit(a_mat=a, b_mat=b)


def second_order(rs: RealSplit, which: str = VAR_X) -> SecondOrderSystem:
    """Decoupled oscillator form for the chosen variable set.

    Requires B invertible. Both tags carry the same coefficient matrices;
    they differ only in which initial data (x or y block) feeds them.
    """
    if which not in (VAR_X, VAR_Y):
        raise ValueError(f"variable tag must be {VAR_X!r} or {VAR_Y!r}")
    a, b = rs.a_mat, rs.b_mat
    det_b = b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]
    scale = float(np.sum(b * b))
    if abs(det_b) <= 1e-12 * max(1e-300, scale):
        raise SingularB("Re(H) is singular; no second-order reduction exists")
    b_inv = np.array([[b[1, 1], -b[0, 1]], [-b[1, 0], b[0, 0]]]) / det_b
    bab = b @ a @ b_inv
    damping = a + bab
    stiffness = bab @ a + b @ b
    return SecondOrderSystem(damping=damping, stiffness=stiffness, variable_tag=which)


def real_state(psi) -> np.ndarray:
    """(x1, y1, x2, y2) from a complex 2-vector."""
    psi = cl.as_vector2(psi)
    return np.array([psi[0].real, psi[0].imag, psi[1].real, psi[1].imag])


def complex_state(state4) -> np.ndarray:
    state4 = np.asarray(state4, dtype=float).reshape(4)
    return np.array([state4[0] + 1j * state4[1], state4[2] + 1j * state4[3]])


def initial_derivative(rs: RealSplit, x0, y0, which: str = VAR_X) -> tuple[np.ndarray, np.ndarray]:
    """(z0, z'(0)) consistent with the first-order flow."""
    x0 = np.asarray(x0, dtype=float).reshape(2)
    y0 = np.asarray(y0, dtype=float).reshape(2)
    if which == VAR_X:
        return x0, rs.a_mat @ x0 + rs.b_mat @ y0
    if which == VAR_Y:
        return y0, rs.a_mat @ y0 - rs.b_mat @ x0
    raise ValueError(f"variable tag must be {VAR_X!r} or {VAR_Y!r}")
