import math

import numpy as np
import pytest

from geophase import complex_linalg as cl
from geophase.errors import ExceptionalPoint


def random_matrix(rng):
    return rng.uniform(-1, 1, (2, 2)) + 1j * rng.uniform(-1, 1, (2, 2))


class TestEig2:
    def test_identity_degenerate(self):
        es = cl.eig2(np.eye(2))
        assert es.eigenvalue1 == 1 and es.eigenvalue2 == 1
        assert es.degenerate and not es.defective

    def test_pauli_y_spectrum(self):
        es = cl.eig2(np.array([[0, -1j], [1j, 0]]))
        assert es.eigenvalue1 == pytest.approx(1)
        assert es.eigenvalue2 == pytest.approx(-1)

    def test_dimer_spectrum(self):
        # a=1, g=1, s=0.6: a +- g*sqrt(1 - 0.36) = 1 +- 0.8
        h = np.array([[1 + 0.6j, -1j], [1j, 1 - 0.6j]])
        es = cl.eig2(h)
        assert es.eigenvalue1 == pytest.approx(1.8, abs=1e-12)
        assert es.eigenvalue2 == pytest.approx(0.2, abs=1e-12)

    def test_residuals_and_trace_det(self):
        rng = np.random.default_rng(42)
        for _ in range(1000):
            m = random_matrix(rng)
            es = cl.eig2(m)
            scale = np.linalg.norm(m)
            for lam, v in ((es.eigenvalue1, es.eigenvector1),
                           (es.eigenvalue2, es.eigenvector2)):
                assert np.linalg.norm(m @ v - lam * v) < 1e-10 * scale
                assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
            assert es.eigenvalue1 + es.eigenvalue2 == pytest.approx(
                m[0, 0] + m[1, 1], abs=1e-10)
            assert es.eigenvalue1 * es.eigenvalue2 == pytest.approx(
                m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0], abs=1e-10)

    def test_hermitian_real_spectrum(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            m = random_matrix(rng)
            h = (m + m.conj().T) / 2
            es = cl.eig2(h)
            assert abs(es.eigenvalue1.imag) < 1e-12
            assert abs(es.eigenvalue2.imag) < 1e-12

    def test_ordering_descending_real_then_imag(self):
        es = cl.eig2(np.diag([1.0, 3.0]))
        assert es.eigenvalue1 == 3.0
        es = cl.eig2(np.array([[1j, 0], [0, -1j]]))
        assert es.eigenvalue1 == 1j

    def test_phase_convention_largest_component_real_positive(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            m = random_matrix(rng)
            es = cl.eig2(m)
            for v in (es.eigenvector1, es.eigenvector2):
                k = np.argmax(np.abs(v))
                assert v[k].imag == pytest.approx(0.0, abs=1e-14)
                assert v[k].real > 0

    def test_defective_jordan_block(self):
        es = cl.eig2(np.array([[1.0, 1.0], [0.0, 1.0]]))
        assert es.degenerate and es.defective
        np.testing.assert_allclose(es.eigenvector1, es.eigenvector2)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            cl.eig2(np.array([[np.nan, 0], [0, 1]]))


class TestAdjoint:
    def test_hermitian_fixed_point(self):
        h = np.array([[2.0, 1 - 3j], [1 + 3j, 2.0]])
        np.testing.assert_array_equal(cl.adjoint(h), h)

    def test_by_definition(self):
        m = np.array([[0, -1j], [0.5j, 0]])
        expected = np.array([[0, -0.5j], [1j, 0]])
        np.testing.assert_array_equal(cl.adjoint(m), expected)

    def test_involution(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            m = random_matrix(rng)
            np.testing.assert_array_equal(cl.adjoint(cl.adjoint(m)), m)


class TestBiorthogonal:
    def test_hermitian_left_equals_right(self):
        h = np.array([[1.0, 0.3 - 0.2j], [0.3 + 0.2j, -0.5]])
        b = cl.biorthogonal(h)
        np.testing.assert_allclose(b.left1, b.right1, atol=1e-12)
        np.testing.assert_allclose(b.left2, b.right2, atol=1e-12)

    def test_dimer_cross_orthogonality(self):
        # a=0, g=1, s=0.5; closed-form eigenvectors are (1, e^{+-i d})/sqrt2
        # with e^{i d} = s + i*sqrt(1 - s^2), so <left1|right2> must vanish.
        h = np.array([[0.5j, -1j], [1j, -0.5j]])
        b = cl.biorthogonal(h)
        assert abs(np.vdot(b.left1, b.right2)) < 1e-10
        assert abs(np.vdot(b.left2, b.right1)) < 1e-10

    def test_overlap_is_identity(self):
        rng = np.random.default_rng(13)
        count = 0
        for _ in range(300):
            m = random_matrix(rng)
            try:
                b = cl.biorthogonal(m)
            except ExceptionalPoint:
                continue
            count += 1
            np.testing.assert_allclose(b.overlap_matrix(), np.eye(2), atol=1e-10)
        assert count > 250

    def test_exceptional_point_raises(self):
        # dimer with s = g (gamma = 1) is defective
        h = np.array([[1j, -1j], [1j, -1j]])
        with pytest.raises(ExceptionalPoint):
            cl.biorthogonal(h)

    def test_broken_regime_pairing(self):
        # gamma > 1: complex conjugate eigenvalues; pairing must still give
        # the identity overlap.
        s, g = 1.25, 1.0
        h = np.array([[s * 1j, -1j * g], [1j * g, -s * 1j]])
        b = cl.biorthogonal(h)
        np.testing.assert_allclose(b.overlap_matrix(), np.eye(2), atol=1e-10)
        assert b.eigenvalue1.imag == pytest.approx(math.sqrt(s * s - g * g), abs=1e-12)


def test_spectral_radius():
    assert cl.spectral_radius(np.diag([1.0, -3.0])) == pytest.approx(3.0)
