"""Fixed-step propagation of all three equivalent representations.

The integrator is classical RK4 with no adaptivity: phase extraction needs
uniformly sampled trajectories, so accuracy is guarded up front by refusing
steps that under-resolve the fastest frequency (step * spectral radius
must stay below 0.1). Hot loops live in the _kernels subpackage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import complex_linalg as cl
from ._kernels import BACKEND, rk4_cplx, rk4_real
from .decomplexify import RealSystem4, SecondOrderSystem, blocks_from_evo
from .errors import StepTooLarge, WrongRepresentation

COMPLEX2 = "complex2"
REAL4 = "real4"
SECOND_ORDER2 = "second_order2"

STEP_GUARD = 0.1

__all__ = [
    "IntegratorConfig",
    "Trajectory",
    "NormSeries",
    "suggest_step",
    "integrate_schrodinger",
    "integrate_real4",
    "integrate_second_order",
    "norm_series",
    "COMPLEX2",
    "REAL4",
    "SECOND_ORDER2",
]


@dataclass(frozen=True)
class IntegratorConfig:
    step: float
    duration: float
    record_stride: int = 1

    def __post_init__(self):
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ValueError("step must be positive and finite")
        if not (self.duration > 0 and math.isfinite(self.duration)):
            raise ValueError("duration must be positive and finite")
        if self.step > self.duration:
            raise ValueError("step must not exceed duration")
        if int(self.record_stride) != self.record_stride or self.record_stride < 1:
            raise ValueError("record_stride must be a positive integer")

    @property
    def n_steps(self) -> int:
        # Tolerate duration/step landing a hair under an integer.
        return int(math.floor(self.duration / self.step + 1e-9))

    @property
    def n_records(self) -> int:
        return self.n_steps // self.record_stride + 1

    def times(self) -> np.ndarray:
        return np.arange(self.n_records) * (self.step * self.record_stride)


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled states of one representation, immutable once built."""

    times: np.ndarray
    states: np.ndarray
    representation_tag: str
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times.setflags(write=False)
        self.states.setflags(write=False)

    def __len__(self) -> int:
        return len(self.times)


@dataclass(frozen=True)
class NormSeries:
    times: np.ndarray
    norms_sq: np.ndarray


def suggest_step(spectral_radius: float, duration: float) -> float:
    """About 1000 samples per fastest period, capped by the duration."""
    if spectral_radius < 1e-12:
        return duration / 1000.0
    return min(2.0 * math.pi / (1000.0 * spectral_radius), duration)


def _check_step(step: float, rho: float, what: str):
    if step * rho > STEP_GUARD:
        raise StepTooLarge(
            f"step {step} too large for {what} (step * spectral radius = "
            f"{step * rho:.3g} > {STEP_GUARD})"
        )


def _base_metadata(cfg: IntegratorConfig, extra: dict | None) -> dict:
    md = {
        "step": cfg.step,
        "duration": cfg.duration,
        "record_stride": cfg.record_stride,
        "backend": BACKEND,
    }
    if extra:
        md.update(extra)
    return md


def integrate_schrodinger(h, psi0, cfg: IntegratorConfig, metadata: dict | None = None) -> Trajectory:
    """Propagate i dPsi/dt = H Psi from psi0 on the grid defined by cfg."""
    mat = cl.as_matrix2(getattr(h, "matrix", h))
    psi0 = cl.as_vector2(psi0)
    _check_step(cfg.step, cl.spectral_radius(mat), "the Schrodinger flow")
    states = rk4_cplx(np.ascontiguousarray(-1j * mat), np.ascontiguousarray(psi0),
                      cfg.step, cfg.n_records, cfg.record_stride)
    return Trajectory(cfg.times(), states, COMPLEX2, _base_metadata(cfg, metadata))


def integrate_real4(sys: RealSystem4, state0, cfg: IntegratorConfig,
                    metadata: dict | None = None) -> Trajectory:
    """Propagate the stacked real flow (x1, y1, x2, y2)."""
    state0 = np.asarray(state0, dtype=float).reshape(4)
    rs = blocks_from_evo(sys.evo)
    _check_step(cfg.step, cl.spectral_radius(rs.reassemble()), "the real 4-dim flow")
    states = rk4_real(np.ascontiguousarray(sys.evo), np.ascontiguousarray(state0),
                      cfg.step, cfg.n_records, cfg.record_stride)
    return Trajectory(cfg.times(), states, REAL4, _base_metadata(cfg, metadata))


def integrate_second_order(sys: SecondOrderSystem, z0, zdot0, cfg: IntegratorConfig,
                           metadata: dict | None = None) -> Trajectory:
    """Propagate z'' = D z' - K z as a first-order companion system.

    Recorded states carry the position block only; velocities stay internal.
    """
    z0 = np.asarray(z0, dtype=float).reshape(2)
    zdot0 = np.asarray(zdot0, dtype=float).reshape(2)
    _check_step(cfg.step, math.sqrt(float(np.sqrt(np.sum(sys.stiffness**2)))),
                "the oscillator flow")
    comp = np.zeros((4, 4))
    comp[:2, 2:] = np.eye(2)
    comp[2:, :2] = -sys.stiffness
    comp[2:, 2:] = sys.damping
    full0 = np.concatenate([z0, zdot0])
    states = rk4_real(np.ascontiguousarray(comp), np.ascontiguousarray(full0),
                      cfg.step, cfg.n_records, cfg.record_stride)
    md = _base_metadata(cfg, metadata)
    md.setdefault("variable_tag", sys.variable_tag)
    return Trajectory(cfg.times(), states[:, :2].copy(), SECOND_ORDER2, md)


def norm_series(t: Trajectory) -> NormSeries:
    """|Psi|^2 per sample; defined for the complex and stacked-real forms only."""
    if t.representation_tag == COMPLEX2:
        norms = np.sum(np.abs(t.states) ** 2, axis=1)
    elif t.representation_tag == REAL4:
        norms = np.sum(t.states**2, axis=1)
    else:
        raise WrongRepresentation(
            "norm is meaningless for a position-only oscillator trajectory"
        )
    return NormSeries(times=t.times, norms_sq=norms)
