import math

import numpy as np
import pytest

from svetlichny import (
    Family,
    FamilyParams,
    PureState3,
    from_amplitudes,
    gghz,
    make_state,
    maximal_slice,
    states_equal,
    swap_qubits,
    three_param,
)

from conftest import haar_state

SQRT2 = math.sqrt(2.0)


class TestGghz:
    def test_theta_zero_is_000(self):
        np.testing.assert_allclose(gghz(0.0).amplitudes, np.eye(8)[0], atol=1e-15)

    def test_quarter_pi_is_ghz(self):
        expected = np.zeros(8)
        expected[0] = expected[7] = 1 / SQRT2
        np.testing.assert_allclose(gghz(math.pi / 4).amplitudes, expected, atol=1e-15)

    def test_pi_over_six(self):
        expected = np.zeros(8)
        expected[0] = math.sqrt(3) / 2
        expected[7] = 0.5
        np.testing.assert_allclose(gghz(math.pi / 6).amplitudes, expected, atol=1e-15)


class TestMaximalSlice:
    def test_half_pi_is_ghz(self):
        assert states_equal(maximal_slice(math.pi / 2), gghz(math.pi / 4))

    def test_theta_zero_is_bell_pair_times_zero(self):
        expected = np.zeros(8)
        expected[0] = expected[6] = 1 / SQRT2
        np.testing.assert_allclose(maximal_slice(0.0).amplitudes, expected, atol=1e-15)

    def test_quarter_pi(self):
        expected = np.zeros(8)
        expected[0] = 1 / SQRT2
        expected[6] = expected[7] = 0.5
        np.testing.assert_allclose(maximal_slice(math.pi / 4).amplitudes, expected, atol=1e-15)


class TestThreeParam:
    def test_reduces_to_gghz(self):
        for theta1 in np.linspace(0, 2 * math.pi, 9):
            np.testing.assert_allclose(
                three_param(theta1, math.pi / 2, math.pi / 2).amplitudes,
                gghz(theta1).amplitudes,
                atol=1e-15,
            )

    def test_reduces_to_maximal_slice(self):
        for theta3 in np.linspace(0, 2 * math.pi, 9):
            np.testing.assert_allclose(
                three_param(math.pi / 4, math.pi / 2, theta3).amplitudes,
                maximal_slice(theta3).amplitudes,
                atol=1e-15,
            )

    def test_theta1_zero_is_000(self):
        np.testing.assert_allclose(three_param(0.0, 0.7, 1.3).amplitudes, np.eye(8)[0], atol=1e-15)

    def test_unit_norm(self):
        rng = np.random.default_rng(10)
        for _ in range(100):
            t1, t2, t3 = rng.uniform(0, 2 * math.pi, 3)
            assert abs(np.linalg.norm(three_param(t1, t2, t3).amplitudes) - 1.0) < 1e-12


class TestSwapQubits:
    def test_basis_relabeling(self):
        ket001 = from_amplitudes(np.eye(8)[1])
        np.testing.assert_allclose(swap_qubits(ket001, 2, 3).amplitudes, np.eye(8)[2], atol=1e-15)

    def test_ghz_symmetric(self):
        ghz = gghz(math.pi / 4)
        for i, j in [(1, 2), (1, 3), (2, 3)]:
            assert states_equal(swap_qubits(ghz, i, j), ghz)

    def test_maximal_slice_swap(self):
        theta3 = 0.8
        swapped = swap_qubits(maximal_slice(theta3), 2, 3)
        expected = np.zeros(8)
        expected[0] = 1 / SQRT2
        expected[5] = math.cos(theta3) / SQRT2  # |101>
        expected[7] = math.sin(theta3) / SQRT2  # |111>
        np.testing.assert_allclose(swapped.amplitudes, expected, atol=1e-15)

    def test_involution(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            state = haar_state(rng)
            for i, j in [(1, 2), (1, 3), (2, 3)]:
                np.testing.assert_array_equal(
                    swap_qubits(swap_qubits(state, i, j), i, j).amplitudes, state.amplitudes
                )

    @pytest.mark.parametrize("i,j", [(1, 1), (0, 2), (2, 4)])
    def test_bad_indices_rejected(self, i, j):
        with pytest.raises(ValueError):
            swap_qubits(gghz(0.3), i, j)


class TestFromAmplitudes:
    def test_normalizes_ghz(self):
        state = from_amplitudes([1, 0, 0, 0, 0, 0, 0, 1])
        assert states_equal(state, gghz(math.pi / 4))

    def test_normalizes_scalar_multiple(self):
        state = from_amplitudes([2, 0, 0, 0, 0, 0, 0, 0])
        np.testing.assert_allclose(state.amplitudes, np.eye(8)[0], atol=1e-15)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            from_amplitudes([0] * 8)

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            from_amplitudes([1, 0, 0])


class TestPureState3:
    def test_non_normalized_rejected(self):
        with pytest.raises(ValueError):
            PureState3(np.ones(8))

    def test_amplitudes_read_only(self):
        state = gghz(0.4)
        with pytest.raises(ValueError):
            state.amplitudes[0] = 1.0

    def test_density_matrix(self):
        state = gghz(math.pi / 4)
        rho = state.density_matrix()
        assert abs(np.trace(rho) - 1.0) < 1e-12
        np.testing.assert_allclose(rho, rho.conj().T, atol=1e-15)

    def test_states_equal_up_to_phase(self):
        state = gghz(0.9)
        rotated = PureState3(state.amplitudes * np.exp(0.7j))
        assert states_equal(state, rotated)
        assert not states_equal(state, gghz(1.2))


class TestFamilyParams:
    def test_angles_reduced_mod_two_pi(self):
        params = FamilyParams(Family.GGHZ, theta1=2 * math.pi + 0.25, theta2=-0.5)
        assert math.isclose(params.theta1, 0.25)
        assert math.isclose(params.theta2, 2 * math.pi - 0.5)

    def test_make_state_dispatch(self):
        assert states_equal(make_state(FamilyParams(Family.GGHZ, theta1=0.3)), gghz(0.3))
        assert states_equal(make_state(FamilyParams(Family.MS, theta3=0.7)), maximal_slice(0.7))
        assert states_equal(
            make_state(FamilyParams(Family.THREE_PARAM, theta1=0.3, theta2=0.6, theta3=0.9)),
            three_param(0.3, 0.6, 0.9),
        )
