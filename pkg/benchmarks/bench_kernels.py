"""Compare the compiled RK4 kernel against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Workloads mirror how the package drives the kernels: one long oscillator
trajectory (real, 4-dim companion system) and a batch of short two-level
evolutions (complex, 2-dim). Both backends implement classical RK4 for
constant linear systems; the fallback collapses each step to one matrix
product, the extension runs the four stages in C.
"""

import argparse
import math
import time

import numpy as np

from geophase import _kernels
from geophase._kernels import _rk4_py


def _time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _companion():
    omega, s, g = 20.0, 0.24, 0.4
    comp = np.zeros((4, 4))
    comp[:2, 2:] = np.eye(2)
    comp[2:, :2] = -(omega**2) * np.eye(2)
    comp[2:, 2:] = [[s, g], [-g, -s]]
    return comp


def dense_recording(impl):
    # every step recorded, as the envelope extraction needs
    return impl.rk4_real(_companion(), np.array([1.0, 0.0, 0.0, 0.0]),
                         3.2e-4, 31251, 1)  # ~31k steps, stride 1


def strided_recording(impl):
    # heavy stride: the fallback collapses each block into one matrix power
    return impl.rk4_real(_companion(), np.array([1.0, 0.0, 0.0, 0.0]),
                         1e-4, 1001, 1000)  # 1e6 steps, stride 1000


def batch_evolutions(impl):
    rng = np.random.default_rng(0)
    out = 0.0
    for _ in range(200):
        m = rng.uniform(-1, 1, (2, 2)) + 1j * rng.uniform(-1, 1, (2, 2))
        h = (m + m.conj().T) / 2
        psi0 = np.array([1.0 + 0j, 0.0j])
        traj = impl.rk4_cplx(-1j * h, psi0, 1e-3, 1001, 10)  # 10k steps each
        out += float(np.abs(traj[-1]).sum())
    return out


WORKLOADS = [
    ("dense recording, 31k steps, stride 1", dense_recording),
    ("strided recording, 1e6 steps, stride 1000", strided_recording),
    ("batch of 200 two-level runs, stride 10", batch_evolutions),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _kernels.BACKEND != "compiled":
        print("compiled extension not available; timing the fallback only")
        impls = [("python", _rk4_py)]
    else:
        from geophase._kernels import _rk4

        impls = [("compiled", _rk4), ("python", _rk4_py)]
        a = strided_recording(_rk4)
        b = strided_recording(_rk4_py)
        print(f"backend agreement (1e6-step trajectory): max|delta| = "
              f"{np.max(np.abs(a - b)):.3e}")

    for label, workload in WORKLOADS:
        times = {}
        for name, impl in impls:
            times[name] = _time(lambda: workload(impl), args.repeat)
        line = "   ".join(f"{name} {t * 1e3:9.2f} ms" for name, t in times.items())
        print(f"{label:<45} {line}")
        if len(times) == 2:
            ratio = times["python"] / times["compiled"]
            print(f"{'':<45} compiled is {ratio:5.2f}x the python speed")


if __name__ == "__main__":
    main()
