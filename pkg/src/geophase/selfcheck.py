"""Built-in invariant battery behind `geophase check`.

A curated, seeded subset of the test suite that runs in a few seconds and
needs no test framework: algebraic identities, spectral structure, the
cross-representation equivalence and the norm laws.
"""

from __future__ import annotations

import math

import numpy as np

from . import circuits as cir
from . import complex_linalg as cl
from . import decomplexify as dc
from . import evolution as ev
from . import hamiltonians as hm
from . import phases as ph


def _random_matrix(rng) -> np.ndarray:
    return rng.uniform(-1, 1, (2, 2)) + 1j * rng.uniform(-1, 1, (2, 2))


def check_eigen_residuals() -> bool:
    rng = np.random.default_rng(1001)
    for _ in range(200):
        m = _random_matrix(rng)
        es = cl.eig2(m)
        scale = max(1.0, float(np.linalg.norm(m)))
        for lam, vec in ((es.eigenvalue1, es.eigenvector1), (es.eigenvalue2, es.eigenvector2)):
            if np.linalg.norm(m @ vec - lam * vec) > 1e-10 * scale:
                return False
        tr = m[0, 0] + m[1, 1]
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(es.eigenvalue1 + es.eigenvalue2 - tr) > 1e-10:
            return False
        if abs(es.eigenvalue1 * es.eigenvalue2 - det) > 1e-10:
            return False
    return True


def check_phase_identities() -> bool:
    rng = np.random.default_rng(1002)
    for _ in range(200):
        l2 = rng.uniform(-2, 2)
        l1 = l2 + rng.uniform(0.1, 3)
        theta = rng.uniform(0, math.pi)
        init = ph.BlochInitialState(theta0=theta)
        total = ph.total_phase(l1, l2)
        if abs(total - (ph.dynamic_phase(l1, l2, init) + ph.berry_phase(init))) > 1e-12:
            return False
        if abs(ph.hannay_angle(theta) + 2 * ph.berry_phase(init)) > 1e-12:
            return False
    return True


def check_pt_spectrum() -> bool:
    for gamma in np.linspace(0, 2, 41):
        p = hm.PTDimerParams(a=0.5, g=1.0, s=float(gamma))
        es = hm.build_pt_dimer(p).eig()
        if gamma < 1 and max(abs(es.eigenvalue1.imag), abs(es.eigenvalue2.imag)) > 1e-12:
            return False
        if gamma > 1:
            if abs(es.eigenvalue2 - es.eigenvalue1.conjugate()) > 1e-10:
                return False
            if abs(es.eigenvalue1.real - p.a) > 1e-10:
                return False
    return True


def check_pt_realization() -> bool:
    below = hm.pt_symmetry_check(hm.build_pt_dimer(hm.PTDimerParams(0.0, 1.0, 0.5)))
    above = hm.pt_symmetry_check(hm.build_pt_dimer(hm.PTDimerParams(0.0, 1.0, 1.5)))
    decay = hm.pt_symmetry_check(hm.build_uniform_decay(np.zeros((2, 2)), 0.3))
    return (
        below == {"symmetric": True, "realization": hm.UNBROKEN}
        and above == {"symmetric": True, "realization": hm.BROKEN}
        and decay["symmetric"] is False
    )


def check_equivalence() -> bool:
    rng = np.random.default_rng(1003)
    cfg = ev.IntegratorConfig(step=1e-3, duration=5.0, record_stride=10)
    for _ in range(5):
        m = _random_matrix(rng)
        h = (m + m.conj().T) / 2
        rs = dc.split(h)
        if abs(np.linalg.det(rs.b_mat)) < 0.05:
            continue
        psi0 = rng.normal(size=2) + 1j * rng.normal(size=2)
        psi0 = psi0 / np.linalg.norm(psi0)
        t_c = ev.integrate_schrodinger(h, psi0, cfg)
        t_r = ev.integrate_real4(dc.real4(h), dc.real_state(psi0), cfg)
        z0, zd0 = dc.initial_derivative(rs, psi0.real, psi0.imag, dc.VAR_X)
        t_s = ev.integrate_second_order(dc.second_order(rs, dc.VAR_X), z0, zd0, cfg)
        x_from_c = t_c.states.real
        x_from_r = t_r.states[:, (0, 2)]
        if np.max(np.abs(x_from_c - x_from_r)) > 1e-7:
            return False
        if np.max(np.abs(x_from_c - t_s.states)) > 1e-7:
            return False
    return True


def check_norm_laws() -> bool:
    cfg = ev.IntegratorConfig(step=1e-3, duration=2.0, record_stride=10)
    h = hm.build_hermitian(hm.HermitianEqualDiagonal(h=0.7, f=0.4, g=0.2))
    psi0 = np.array([1.0, 1.0j]) / math.sqrt(2)
    ns = ev.norm_series(ev.integrate_schrodinger(h.matrix, psi0, cfg))
    if np.max(np.abs(ns.norms_sq - 1.0)) > 1e-9:
        return False
    s = 0.25
    hd = hm.build_uniform_decay(h.m, s)
    ns = ev.norm_series(ev.integrate_schrodinger(hd.matrix, psi0, cfg))
    expected = np.exp(-2 * s * ns.times)
    if np.max(np.abs(ns.norms_sq / expected - 1.0)) > 1e-8:
        return False
    dimer = hm.build_pt_dimer(hm.PTDimerParams(a=0.0, g=1.0, s=0.5))
    es = dimer.eig()
    ns = ev.norm_series(ev.integrate_schrodinger(dimer.matrix, es.eigenvector1, cfg))
    return bool(np.max(np.abs(ns.norms_sq - ns.norms_sq[0])) < 1e-6)


def check_convergence_order() -> bool:
    h = np.diag([1.0, 2.0]).astype(complex)
    psi0 = np.array([1.0, 1.0]) / math.sqrt(2)
    errors = []
    for step in (0.04, 0.02, 0.01):
        n = round(2 * math.pi / step)
        cfg = ev.IntegratorConfig(step=step, duration=n * step, record_stride=n)
        traj = ev.integrate_schrodinger(h, psi0, cfg)
        t_end = traj.times[-1]
        exact = np.array([np.exp(-1j * t_end), np.exp(-2j * t_end)]) / math.sqrt(2)
        errors.append(np.max(np.abs(traj.states[-1] - exact)))
    order = math.log2(errors[0] / errors[1])
    return abs(order - 4.0) < 0.2


def check_sweep_structure() -> bool:
    base = cir.CircuitParams(inductance=1.0, capacitance=1.0, gyrator_conductance=0.1)
    points = cir.gamma_sweep(base, np.linspace(0, 2, 21))
    for pt in points:
        real_ok = np.max(np.abs(pt.mode_values.real)) <= 1e-9 * base.omega0
        if pt.gamma < 1 and not real_ok:
            return False
        if pt.gamma > 1 and real_ok:
            return False
        if abs(np.sum(pt.mode_values)) > 1e-10:
            return False
    return True


def check_geometric_phase_invariance() -> bool:
    values = [ph.pt_geometric_phase(1.0, g, 0.1) for g in (0.0, 0.3, 0.6, 0.9)]
    return max(values) - min(values) < 1e-12 and abs(values[0] - 10 * math.pi) < 1e-12


CHECKS = [
    ("eigen residuals and trace/det", check_eigen_residuals),
    ("phase identity chain", check_phase_identities),
    ("gain/loss dimer spectrum", check_pt_spectrum),
    ("symmetry realization flips", check_pt_realization),
    ("representation equivalence", check_equivalence),
    ("norm evolution laws", check_norm_laws),
    ("integrator order", check_convergence_order),
    ("spectrum sweep structure", check_sweep_structure),
    ("holonomy gamma-independence", check_geometric_phase_invariance),
]


def run_all(emit=print) -> int:
    failures = 0
    for name, fn in CHECKS:
        ok = False
        try:
            ok = fn()
        except Exception as exc:  # a check must never abort the battery
            emit(f"FAIL {name}: {exc!r}")
            failures += 1
            continue
        if ok:
            emit(f"ok   {name}")
        else:
            emit(f"FAIL {name}")
            failures += 1
    return failures
