import numpy as np
import pytest

from qre.errors import NotPhysicallyRealizable, ShapeMismatch
from qre.quantum import (
    DoubledOperator,
    feedback_squeezer_controller,
    feedback_squeezer_plant,
    homodyne_matrix,
    is_doubled,
    omega,
    squeezer_controller,
    squeezer_plant,
)


class TestOmega:
    def test_identity_block(self):
        np.testing.assert_array_equal(
            omega([[1.0]], [[0.0]]).realization, np.eye(2)
        )

    def test_swap_block(self):
        np.testing.assert_array_equal(
            omega([[0.0]], [[1.0]]).realization, np.array([[0, 1], [1, 0]])
        )

    def test_squeezer_state_matrix(self):
        # loss 4, nonlinearity 0.5 -> diagonal -2, off-diagonal -0.5
        np.testing.assert_array_equal(
            omega([[-2.0]], [[-0.5]]).realization,
            np.array([[-2, -0.5], [-0.5, -2]]),
        )

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            omega(np.eye(2), np.eye(3))

    def test_from_realization_roundtrip_and_reject(self):
        d = omega([[1, 2j]], [[3, 4]])
        d2 = DoubledOperator.from_realization(d.realization)
        np.testing.assert_array_equal(d2.realization, d.realization)
        with pytest.raises(ShapeMismatch):
            DoubledOperator.from_realization(np.array([[1, 2], [3, 4]]))


class TestDoubledClosure:
    def test_products_and_sums_preserve_structure(self):
        rng = np.random.default_rng(13)
        for _ in range(50):
            p, q, r = rng.integers(1, 4, size=3)
            a = omega(
                rng.standard_normal((p, q)) + 1j * rng.standard_normal((p, q)),
                rng.standard_normal((p, q)) + 1j * rng.standard_normal((p, q)),
            ).realization
            b = omega(
                rng.standard_normal((q, r)) + 1j * rng.standard_normal((q, r)),
                rng.standard_normal((q, r)) + 1j * rng.standard_normal((q, r)),
            ).realization
            c = omega(
                rng.standard_normal((p, q)) + 1j * rng.standard_normal((p, q)),
                rng.standard_normal((p, q)) + 1j * rng.standard_normal((p, q)),
            ).realization
            assert is_doubled(a @ b)
            assert is_doubled(a + c)


class TestHomodyne:
    def test_zero_angle(self):
        np.testing.assert_allclose(
            homodyne_matrix([0.0]), np.array([[1, 1]]) / np.sqrt(2)
        )

    def test_quarter_turn(self):
        np.testing.assert_allclose(
            homodyne_matrix([np.pi / 2]),
            np.array([[-1j, 1j]]) / np.sqrt(2),
            atol=1e-15,
        )

    def test_ten_degrees(self):
        s = homodyne_matrix([np.deg2rad(10.0)])
        c, d = np.cos(np.deg2rad(10)), np.sin(np.deg2rad(10))
        np.testing.assert_allclose(
            s, np.array([[c - 1j * d, c + 1j * d]]) / np.sqrt(2), rtol=1e-12
        )
        np.testing.assert_allclose(s @ s.conj().T, np.eye(1), atol=1e-14)

    def test_rows_orthonormal_random_angles(self):
        rng = np.random.default_rng(17)
        for _ in range(25):
            m = rng.integers(1, 5)
            s = homodyne_matrix(rng.uniform(-np.pi, np.pi, size=m))
            np.testing.assert_allclose(s @ s.conj().T, np.eye(m), atol=1e-13)


class TestSqueezerPlant:
    def test_benchmark_values(self):
        p = squeezer_plant(4.0, 4.0, 0.5, [0.1, -0.1])
        np.testing.assert_array_equal(p.A, [[-2, -0.5], [-0.5, -2]])
        np.testing.assert_array_equal(p.B1, -2 * np.eye(2))
        np.testing.assert_array_equal(p.C, 2 * np.eye(2))
        np.testing.assert_array_equal(p.D1, np.eye(2))
        assert p.physically_realizable

    def test_output_input_product_anchor(self):
        p = squeezer_plant(4.0, 4.0, 0.5, [0.1, -0.1])
        np.testing.assert_array_equal(p.C @ p.B1, -4 * np.eye(2))

    def test_strict_realizability(self):
        with pytest.raises(NotPhysicallyRealizable):
            squeezer_plant(4.0, 2.0, 0.5, [0.1, -0.1], strict=True)
        assert not squeezer_plant(4.0, 2.0, 0.5, [0.1, -0.1]).physically_realizable

    def test_zero_nonlinearity_decouples(self):
        p = squeezer_plant(2.0, 2.0, 0.0, [1.0, 0.0])
        np.testing.assert_array_equal(p.A, -np.eye(2))
        np.testing.assert_allclose(p.B1, -np.sqrt(2) * np.eye(2))
        np.testing.assert_allclose(p.C, np.sqrt(2) * np.eye(2))


class TestSqueezerController:
    def test_benchmark_values(self):
        c = squeezer_controller(4.0, 4.0, -1.0)
        np.testing.assert_array_equal(c.A_c, [[-2, 1], [1, -2]])
        np.testing.assert_array_equal(c.B_c1, -2 * np.eye(2))
        np.testing.assert_array_equal(c.C_c, 2 * np.eye(2))
        np.testing.assert_array_equal(c.D_c, np.eye(2))
        assert not c.feedback_capable

    def test_strict_realizability(self):
        with pytest.raises(NotPhysicallyRealizable):
            squeezer_controller(4.0, 2.0, -1.0, strict=True)

    def test_complex_nonlinearity_conjugation(self):
        chi = 0.5 + 0.5j
        c = squeezer_controller(2.0, 2.0, chi)
        np.testing.assert_allclose(
            c.A_c, [[-1, -chi], [-np.conj(chi), -1]]
        )


class TestFeedbackSqueezerPlant:
    def test_benchmark_values(self):
        p = feedback_squeezer_plant(4.0, 2.0, 2.0, -1.0, [0.1, -0.1])
        np.testing.assert_array_equal(p.A, [[-2, 1], [1, -2]])
        np.testing.assert_allclose(p.B1, -np.sqrt(2) * np.eye(2))
        np.testing.assert_allclose(p.B2, -np.sqrt(2) * np.eye(2))
        np.testing.assert_allclose(p.C, np.sqrt(2) * np.eye(2))
        np.testing.assert_array_equal(
            p.D, np.hstack([np.eye(2), np.zeros((2, 2))])
        )
        assert p.physically_realizable

    def test_strict_realizability(self):
        with pytest.raises(NotPhysicallyRealizable):
            feedback_squeezer_plant(4.0, 3.0, 2.0, -1.0, [0.1, -0.1], strict=True)

    def test_degenerate_single_input_limit(self):
        p = feedback_squeezer_plant(2.0, 2.0, 0.0, 0.0, [1.0, 0.0])
        np.testing.assert_array_equal(p.B2, np.zeros((2, 2)))


class TestFeedbackSqueezerController:
    def test_benchmark_values(self):
        c = feedback_squeezer_controller(4.0, 2.0, 2.0, 0.5)
        np.testing.assert_array_equal(c.A_c, [[-2, -0.5], [-0.5, -2]])
        rk = np.sqrt(2)
        np.testing.assert_allclose(c.B_c1, -rk * np.eye(2))
        np.testing.assert_allclose(c.B_c2, -rk * np.eye(2))
        np.testing.assert_allclose(c.Ct_c, rk * np.eye(2))
        np.testing.assert_allclose(c.C_c, rk * np.eye(2))
        np.testing.assert_array_equal(c.Dt_c1, np.eye(2))
        np.testing.assert_array_equal(c.Dt_c2, np.zeros((2, 2)))
        np.testing.assert_array_equal(c.D_c1, np.zeros((2, 2)))
        np.testing.assert_array_equal(c.D_c2, np.eye(2))
        assert c.feedback_capable

    def test_strict_realizability(self):
        with pytest.raises(NotPhysicallyRealizable):
            feedback_squeezer_controller(4.0, 1.0, 2.0, 0.5, strict=True)

    def test_zero_nonlinearity(self):
        c = feedback_squeezer_controller(2.0, 1.0, 1.0, 0.0)
        np.testing.assert_array_equal(c.A_c, -np.eye(2))
