import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unruh_probe import qmath


def _random_hermitian(rng, dim, scale=10.0):
    m = rng.uniform(-scale, scale, (dim, dim)) + 1j * rng.uniform(-scale, scale, (dim, dim))
    return 0.5 * (m + m.conj().T)


def _bloch_density(r):
    return 0.5 * (
        qmath.pauli(0) + r[0] * qmath.pauli(1) + r[1] * qmath.pauli(2) + r[2] * qmath.pauli(3)
    )


hermitian_4x4 = st.lists(
    st.floats(-10.0, 10.0, allow_nan=False), min_size=32, max_size=32
).map(
    lambda vals: 0.5
    * (
        (m := np.array(vals[:16]).reshape(4, 4) + 1j * np.array(vals[16:]).reshape(4, 4))
        + m.conj().T
    )
)


class TestPauli:
    def test_identity(self):
        assert np.array_equal(qmath.pauli(0), np.eye(2))

    def test_z_convention(self):
        assert np.array_equal(qmath.pauli(3), np.diag([1.0, -1.0]))

    def test_algebra(self):
        s1, s2, s3 = (qmath.pauli(i) for i in (1, 2, 3))
        assert np.allclose(s1 @ s2, 1j * s3, atol=0)
        for i in (1, 2, 3):
            s = qmath.pauli(i)
            assert np.trace(s) == 0
            assert np.array_equal(s @ s, np.eye(2))
            assert qmath.hermiticity_defect(s) == 0.0

    @pytest.mark.parametrize("bad", [-1, 4, 7])
    def test_index_out_of_range(self, bad):
        with pytest.raises(ValueError, match="Pauli index"):
            qmath.pauli(bad)

    def test_read_only(self):
        with pytest.raises(ValueError):
            qmath.pauli(1)[0, 0] = 5.0


class TestTensor:
    def test_identity(self):
        assert np.array_equal(qmath.tensor(qmath.pauli(0), qmath.pauli(0)), np.eye(4))

    def test_z_tensor_identity_diagonal(self):
        got = np.diag(qmath.tensor(qmath.pauli(3), qmath.pauli(0)))
        assert np.array_equal(got, np.array([1.0, 1.0, -1.0, -1.0]))

    def test_trace_multiplicativity(self):
        assert np.trace(qmath.tensor(qmath.pauli(1), qmath.pauli(1))) == 0

    def test_mixed_product(self):
        rng = np.random.default_rng(3)
        a, b, c, d = (_random_hermitian(rng, 2) for _ in range(4))
        lhs = qmath.tensor(a, b) @ qmath.tensor(c, d)
        rhs = qmath.tensor(a @ c, b @ d)
        assert np.allclose(lhs, rhs, atol=1e-12)

    def test_associative_on_paulis(self):
        for i in range(4):
            for j in range(4):
                for k in range(4):
                    a, b, c = qmath.pauli(i), qmath.pauli(j), qmath.pauli(k)
                    assert np.array_equal(
                        qmath.tensor(qmath.tensor(a, b), c),
                        qmath.tensor(a, qmath.tensor(b, c)),
                    )

    def test_rejects_non_square(self):
        with pytest.raises(ValueError, match="square"):
            qmath.tensor(np.ones((2, 3)), np.eye(2))


class TestHermitianEigenvalues:
    def test_sigma_z(self):
        assert np.allclose(qmath.hermitian_eigenvalues(qmath.pauli(3)), [-1.0, 1.0], atol=1e-14)

    def test_zz(self):
        got = qmath.hermitian_eigenvalues(qmath.tensor(qmath.pauli(3), qmath.pauli(3)))
        assert np.allclose(got, [-1.0, -1.0, 1.0, 1.0], atol=1e-14)

    def test_2x2_closed_form(self):
        # the explicit quadratic-root solution is the oracle here
        rng = np.random.default_rng(11)
        for _ in range(200):
            m = _random_hermitian(rng, 2)
            mean = 0.5 * (m[0, 0].real + m[1, 1].real)
            radius = math.hypot(0.5 * (m[0, 0].real - m[1, 1].real), abs(m[0, 1]))
            expected = np.array([mean - radius, mean + radius])
            got = qmath.hermitian_eigenvalues(m)
            assert np.max(np.abs(got - expected)) < 1e-12

    def test_4x4_against_numpy(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            m = _random_hermitian(rng, 4)
            got = qmath.hermitian_eigenvalues(m)
            expected = np.linalg.eigvalsh(m)
            assert np.max(np.abs(got - expected)) < 1e-10

    @settings(max_examples=150, deadline=None)
    @given(hermitian_4x4)
    def test_sum_equals_trace(self, m):
        vals = qmath.hermitian_eigenvalues(m)
        assert abs(float(np.sum(vals)) - float(np.trace(m).real)) < 1e-10

    @settings(max_examples=100, deadline=None)
    @given(hermitian_4x4)
    def test_sorted_and_matches_numpy(self, m):
        vals = qmath.hermitian_eigenvalues(m)
        assert np.all(np.diff(vals) >= 0)
        assert np.max(np.abs(vals - np.linalg.eigvalsh(m))) < 1e-10

    def test_real_symmetric_input(self):
        m = np.array([[2.0, 1.0], [1.0, -3.0]])
        got = qmath.hermitian_eigenvalues(m)
        assert np.max(np.abs(got - np.linalg.eigvalsh(m))) < 1e-13

    def test_rejects_non_hermitian(self):
        m = np.array([[1.0, 1.0], [0.0, 1.0]])
        with pytest.raises(ValueError, match="not Hermitian"):
            qmath.hermitian_eigenvalues(m)

    def test_no_silent_symmetrization_near_tol(self):
        m = np.array([[1.0, 1e-6], [0.0, 1.0]])
        with pytest.raises(ValueError, match="asymmetry"):
            qmath.hermitian_eigenvalues(m, tol=1e-12)
        # the same matrix is accepted once the caller raises the tolerance
        qmath.hermitian_eigenvalues(m, tol=1e-5)

    def test_rejects_bad_tol_and_shape(self):
        with pytest.raises(ValueError, match="tolerance"):
            qmath.hermitian_eigenvalues(np.eye(2), tol=0.0)
        with pytest.raises(ValueError, match="square"):
            qmath.hermitian_eigenvalues(np.ones((2, 3)))


class TestTraceNorm:
    def test_zero(self):
        assert qmath.trace_norm(np.zeros((2, 2))) == 0.0

    def test_sigma_z(self):
        assert abs(qmath.trace_norm(qmath.pauli(3)) - 2.0) < 1e-14

    def test_lower_bound_by_trace(self):
        rng = np.random.default_rng(21)
        for dim in (2, 4):
            for _ in range(100):
                m = _random_hermitian(rng, dim)
                assert qmath.trace_norm(m) >= abs(np.trace(m).real) - 1e-12

    def test_equality_for_semidefinite(self):
        rng = np.random.default_rng(22)
        for _ in range(100):
            b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            psd = b @ b.conj().T
            assert abs(qmath.trace_norm(psd) - np.trace(psd).real) < 1e-10
            assert abs(qmath.trace_norm(-psd) - np.trace(psd).real) < 1e-10

    def test_strict_inequality_for_indefinite(self):
        assert qmath.trace_norm(qmath.pauli(3)) > abs(np.trace(qmath.pauli(3)).real) + 1.0

    def test_bloch_difference_identity(self):
        # for qubits the trace norm of a state difference is the Euclidean
        # Bloch distance; checked on 1000 random physical pairs
        rng = np.random.default_rng(23)
        for _ in range(1000):
            ra, rb = rng.uniform(-1.0, 1.0, (2, 3))
            for r in (ra, rb):
                norm = np.linalg.norm(r)
                if norm > 1.0:
                    r *= rng.uniform(0.0, 1.0) / norm
            got = qmath.trace_norm(_bloch_density(ra) - _bloch_density(rb))
            assert abs(got - np.linalg.norm(ra - rb)) < 1e-10
