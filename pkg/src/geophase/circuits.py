"""Gyrator-coupled resonant circuits and their mode spectra.

Two identical LC tanks coupled by a gyrator give the voltage equations

    V1'' + w0^2 V1 - (Gg/C) V2' = 0
    V2'' + w0^2 V2 + (Gg/C) V1' = 0        (lossless, precessing pair)

and adding a loss resistor R on one tank with a matched -R gain on the other
produces the balanced gain/loss pair

    V1'' + w0^2 V1 - (1/RC) V1' - (Gg/C) V2' = 0
    V2'' + w0^2 V2 + (1/RC) V2' + (Gg/C) V1' = 0

with w0^2 = 1/(LC), coupling g = Gg/C, rate s = 1/(RC), gamma = s/g. The
gain element is modelled as the sign of the rate, not a separate component,
so every built system is balanced by construction.

The spectrum of a built system is computed from its real 4x4 companion
form. For the systems built here (trace-free coupling block, isotropic
stiffness) the companion's characteristic quartic is biquadratic and is
solved in closed form: unlike a dense eigensolver, whose accuracy collapses
to sqrt(eps) on the double root at the coalescence point, the closed form
stays exact there. The 2x2 complexified shortcut (diagonalize the coupling
block, then one scalar quadratic per mode) is provided separately so tests
can check it against the companion route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import complex_linalg as cl
from .decomplexify import VAR_X, SecondOrderSystem
from .errors import UnexpectedResistor

BELOW_EP = "below_ep"
AT_EP = "at_ep"
ABOVE_EP = "above_ep"

__all__ = [
    "CircuitParams",
    "SpectrumPoint",
    "foucault_system",
    "pt_circuit_system",
    "companion_matrix",
    "circuit_spectrum",
    "mode_shortcut",
    "gamma_sweep",
]


@dataclass(frozen=True)
class CircuitParams:
    """Component values; resistance None means a lossless network."""

    inductance: float
    capacitance: float
    gyrator_conductance: float
    resistance: float | None = None

    def __post_init__(self):
        if self.inductance <= 0 or self.capacitance <= 0:
            raise ValueError("L and C must be positive")
        if self.gyrator_conductance < 0:
            raise ValueError("gyrator conductance must be nonnegative")
        if self.resistance is not None and self.resistance <= 0:
            raise ValueError("resistance must be positive when present")

    @property
    def omega0_sq(self) -> float:
        return 1.0 / (self.inductance * self.capacitance)

    @property
    def omega0(self) -> float:
        return math.sqrt(self.omega0_sq)

    @property
    def coupling(self) -> float:
        return self.gyrator_conductance / self.capacitance

    @property
    def rate(self) -> float:
        if self.resistance is None:
            return 0.0
        return 1.0 / (self.resistance * self.capacitance)

    @property
    def gamma_ratio(self) -> float:
        if self.coupling == 0:
            raise ValueError("gamma is undefined without gyrator coupling")
        return self.rate / self.coupling


@dataclass(frozen=True)
class SpectrumPoint:
    gamma: float
    mode_values: np.ndarray
    classification: str


def foucault_system(p: CircuitParams) -> SecondOrderSystem:
    """Lossless precessing pair in z'' = D z' - K z form."""
    if p.resistance is not None:
        raise UnexpectedResistor("the lossless network takes no resistance")
    a = p.coupling
    damping = np.array([[0.0, a], [-a, 0.0]])
    stiffness = p.omega0_sq * np.eye(2)
    return SecondOrderSystem(damping=damping, stiffness=stiffness, variable_tag=VAR_X)


def pt_circuit_system(p: CircuitParams) -> SecondOrderSystem:
    """Balanced gain/loss pair; requires the resistor to be present."""
    if p.resistance is None:
        raise ValueError("the gain/loss network needs a resistance (use foucault_system otherwise)")
    g, s = p.coupling, p.rate
    damping = np.array([[s, g], [-g, -s]])
    stiffness = p.omega0_sq * np.eye(2)
    return SecondOrderSystem(damping=damping, stiffness=stiffness, variable_tag=VAR_X)


def companion_matrix(sys: SecondOrderSystem) -> np.ndarray:
    comp = np.zeros((4, 4))
    comp[:2, 2:] = np.eye(2)
    comp[2:, :2] = -sys.stiffness
    comp[2:, 2:] = sys.damping
    return comp


def _order_modes(vals: np.ndarray) -> np.ndarray:
    return np.array(sorted(vals, key=lambda z: (-z.imag, -z.real)))


def _classify(vals: np.ndarray, omega0: float) -> str:
    tol = 1e-9 * max(omega0, 1e-300)
    if np.max(np.abs(vals.real)) > tol:
        return ABOVE_EP
    upper = np.sort(vals.imag[vals.imag > 0])
    if len(upper) == 2 and abs(upper[1] - upper[0]) <= tol:
        return AT_EP
    return BELOW_EP


def companion_modes(sys: SecondOrderSystem) -> np.ndarray:
    """Eigenvalues of the companion form.

    The characteristic polynomial of [[0, I], [-K, D]] is

        L^4 - tr(D) L^3 + (tr(K) + det(D)) L^2 - tr(K adj(D)) L + det(K);

    with tr(D) = 0 and K = k*I it is biquadratic and solved exactly. Other
    structures fall back to a dense eigensolve.
    """
    d_mat, k_mat = sys.damping, sys.stiffness
    tr_d = d_mat[0, 0] + d_mat[1, 1]
    k = k_mat[0, 0]
    isotropic = np.allclose(k_mat, k * np.eye(2), atol=1e-12 * max(1.0, abs(k)))
    if abs(tr_d) > 1e-12 * max(1.0, float(np.max(np.abs(d_mat)))) or not isotropic:
        return _order_modes(np.linalg.eigvals(companion_matrix(sys)))
    d = d_mat[0, 0] * d_mat[1, 1] - d_mat[0, 1] * d_mat[1, 0]
    sq = np.sqrt(complex(d * (d + 4.0 * k)))
    vals = []
    for l_sq in ((-(2.0 * k + d) + sq) / 2.0, (-(2.0 * k + d) - sq) / 2.0):
        root = np.sqrt(complex(l_sq))
        vals.extend([root, -root])
    return _order_modes(np.array(vals))


def circuit_spectrum(p: CircuitParams) -> SpectrumPoint:
    """Mode values (companion-form eigenvalues) plus classification.

    Modes are sorted by descending imaginary part, then descending real
    part, and always come in conjugate pairs (real dynamics).
    """
    sys = pt_circuit_system(p) if p.resistance is not None else foucault_system(p)
    vals = companion_modes(sys)
    gamma = p.gamma_ratio if p.coupling > 0 else 0.0
    return SpectrumPoint(gamma=gamma, mode_values=vals, classification=_classify(vals, p.omega0))


def mode_shortcut(sys: SecondOrderSystem) -> np.ndarray:
    """Complexified route: eigenvalues mu of the coupling block, then one
    scalar quadratic L^2 - mu L + k = 0 per mode. Valid whenever the
    stiffness is isotropic; the coupling block may be defective (only its
    eigenvalues enter).
    """
    k = sys.stiffness[0, 0]
    if not np.allclose(sys.stiffness, k * np.eye(2), atol=1e-12 * max(1.0, abs(k))):
        raise ValueError("shortcut requires isotropic stiffness")
    es = cl.eig2(sys.damping.astype(complex))
    vals = []
    for mu in (es.eigenvalue1, es.eigenvalue2):
        disc = np.sqrt(complex(mu * mu - 4.0 * k))
        vals.extend([(mu + disc) / 2.0, (mu - disc) / 2.0])
    return _order_modes(np.array(vals))


def gamma_sweep(base: CircuitParams, gamma_grid) -> list[SpectrumPoint]:
    """One SpectrumPoint per grid value, varying the rate as s = gamma * g.

    The base parameters fix w0 and the coupling g; the grid must be sorted
    ascending and nonnegative. Normalisation for plotting (divide by w0) is
    left to the serialization layer.
    """
    grid = [float(x) for x in gamma_grid]
    if any(x < 0 for x in grid):
        raise ValueError("gamma grid must be nonnegative")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("gamma grid must be sorted ascending")
    g = base.coupling
    if g <= 0:
        raise ValueError("sweep needs gyrator coupling")
    points = []
    for gamma in grid:
        if gamma == 0.0:
            p = CircuitParams(base.inductance, base.capacitance, base.gyrator_conductance, None)
        else:
            r = 1.0 / (gamma * g * base.capacitance)
            p = CircuitParams(base.inductance, base.capacitance, base.gyrator_conductance, r)
        points.append(circuit_spectrum(p))
    return points
