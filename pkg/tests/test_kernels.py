"""Both kernel backends must implement the same scheme on the same contract."""

import math

import numpy as np
import pytest

from geophase import _kernels
from geophase._kernels import _rk4_py

backends = [("python", _rk4_py)]
if _kernels.BACKEND == "compiled":
    from geophase._kernels import _rk4

    backends.append(("compiled", _rk4))


@pytest.mark.parametrize("name,impl", backends)
class TestBackends:
    def test_real_rotation(self, name, impl):
        mat = np.array([[0.0, 1.0], [-1.0, 0.0]])
        out = impl.rk4_real(mat, np.array([1.0, 0.0]), 1e-3, 101, 100)
        t_end = 1e-3 * 100 * 100
        assert out[-1, 0] == pytest.approx(math.cos(t_end), abs=1e-9)
        assert out[-1, 1] == pytest.approx(-math.sin(t_end), abs=1e-9)

    def test_complex_phase(self, name, impl):
        mat = np.array([[-1j, 0], [0, -2j]])
        psi0 = np.array([1.0 + 0j, 1.0 + 0j])
        out = impl.rk4_cplx(mat, psi0, 1e-3, 11, 100)
        t_end = 1e-3 * 100 * 10
        assert out[-1, 0] == pytest.approx(np.exp(-1j * t_end), abs=1e-9)
        assert out[-1, 1] == pytest.approx(np.exp(-2j * t_end), abs=1e-9)

    def test_first_row_is_initial_state(self, name, impl):
        mat = np.array([[0.0, 1.0], [-1.0, 0.0]])
        s0 = np.array([0.25, -0.75])
        out = impl.rk4_real(mat, s0, 0.01, 5, 7)
        np.testing.assert_array_equal(out[0], s0)

    def test_shape_validation(self, name, impl):
        with pytest.raises(ValueError):
            impl.rk4_real(np.zeros((2, 3)), np.zeros(2), 0.1, 2, 1)
        with pytest.raises(ValueError):
            impl.rk4_real(np.zeros((2, 2)), np.zeros(3), 0.1, 2, 1)
        with pytest.raises(ValueError):
            impl.rk4_real(np.zeros((2, 2)), np.zeros(2), 0.1, 0, 1)


@pytest.mark.skipif(_kernels.BACKEND != "compiled", reason="extension not built")
class TestBackendAgreement:
    def test_real_agreement(self):
        rng = np.random.default_rng(21)
        for _ in range(10):
            mat = rng.uniform(-1, 1, (4, 4))
            # keep the flow bounded enough for an absolute comparison
            mat = mat - mat.T
            s0 = rng.normal(size=4)
            from geophase._kernels import _rk4

            a = _rk4.rk4_real(mat, s0, 1e-3, 51, 20)
            b = _rk4_py.rk4_real(mat, s0, 1e-3, 51, 20)
            np.testing.assert_allclose(a, b, atol=1e-12)

    def test_complex_agreement(self):
        rng = np.random.default_rng(22)
        m = rng.uniform(-1, 1, (2, 2)) + 1j * rng.uniform(-1, 1, (2, 2))
        h = (m + m.conj().T) / 2
        mat = -1j * h
        psi0 = np.array([0.6, 0.8j])
        from geophase._kernels import _rk4

        a = _rk4.rk4_cplx(mat, psi0, 1e-3, 101, 10)
        b = _rk4_py.rk4_cplx(mat, psi0, 1e-3, 101, 10)
        np.testing.assert_allclose(a, b, atol=1e-12)


def test_convergence_order_of_fallback():
    # The fused propagator must stay a 4th-order scheme.
    mat = np.array([[-1j, 0], [0, -2j]])
    psi0 = np.array([1.0 + 0j, 0.0j])
    errors = []
    for step in (0.04, 0.02):
        n = round(2 * math.pi / step)
        out = _rk4_py.rk4_cplx(mat, psi0, step, 2, n)
        exact = np.exp(-1j * step * n)
        errors.append(abs(out[-1, 0] - exact))
    order = math.log2(errors[0] / errors[1])
    assert order == pytest.approx(4.0, abs=0.2)
