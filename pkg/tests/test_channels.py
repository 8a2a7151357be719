import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nogolab import linalg
from nogolab.channels import (
    QuantumChannel,
    apply_channel,
    channel_from_json,
    channel_to_json,
    cnot,
    demon_channel,
    identity_channel,
    random_channel,
    replacement_channel,
    stinespring,
    unitary_channel,
    validate_cptp,
)
from nogolab.errors import DimensionMismatch, InvalidChannel
from nogolab.measures import fidelity
from nogolab.states import DensityMatrix, PureState, ket, qubit, random_density_matrix, random_pure_state, random_unitary

from oracles import loop_partial_trace

seeds = st.integers(0, 2**40)


class TestValidate:
    def test_unitary(self):
        assert validate_cptp(unitary_channel(random_unitary(3, 1))).max_deviation < 1e-12

    def test_demon(self):
        report = validate_cptp(demon_channel())
        assert report.max_deviation < 1e-12 and report.accepted

    def test_lossy_rejected(self):
        report = validate_cptp(QuantumChannel([[[1, 0], [0, 0]]]))
        assert report.max_deviation == 1.0 and not report.accepted

    def test_random_channels(self):
        for seed in range(100):
            assert validate_cptp(random_channel(2, 3, 2, seed)).max_deviation < 1e-9

    def test_shapes_must_agree(self):
        with pytest.raises(DimensionMismatch):
            QuantumChannel([np.eye(2), np.eye(3)])


class TestApply:
    def test_demon_on_random_states(self):
        target = np.diag([1.0, 0.0])
        for seed in range(20):
            out = apply_channel(demon_channel(), random_density_matrix(2, seed))
            assert np.max(np.abs(out.matrix - target)) < 1e-10

    def test_demon_on_plus_by_hand(self):
        # A0 rho A0^+ = 1/2 |0><0|, A1 rho A1^+ = 1/2 |0><0|
        out = apply_channel(demon_channel(), qubit(math.pi / 4).density())
        np.testing.assert_allclose(out.matrix, [[1, 0], [0, 0]], atol=1e-15)

    def test_identity(self):
        rho = random_density_matrix(3, 4)
        np.testing.assert_allclose(apply_channel(identity_channel(3), rho).matrix, rho.matrix, atol=1e-15)

    def test_rejects_invalid_channel(self):
        with pytest.raises(InvalidChannel):
            apply_channel(QuantumChannel([[[1, 0], [0, 0]]]), random_density_matrix(2, 0))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            apply_channel(identity_channel(3), random_density_matrix(2, 0))

    def test_keeps_factorization(self):
        rho = random_density_matrix(4, 2, dims=(2, 2))
        assert apply_channel(random_channel(4, 4, 2, 1), rho).dims == (2, 2)

    def test_replacement(self):
        omega = random_density_matrix(2, 8)
        out = apply_channel(replacement_channel(omega, 3), random_density_matrix(3, 1))
        np.testing.assert_allclose(out.matrix, omega.matrix, atol=1e-12)

    @given(seeds, st.integers(1, 4), st.integers(1, 4), st.integers(1, 3))
    def test_output_is_a_state(self, seed, din, dout, env):
        if dout * env < din:
            env = din
        out = apply_channel(random_channel(din, dout, env, seed), random_density_matrix(din, seed + 1))
        assert abs(np.trace(out.matrix) - 1) < 1e-9
        assert np.linalg.eigvalsh(out.matrix)[0] >= -1e-9

    @given(seeds)
    def test_demon_idempotent(self, seed):
        once = apply_channel(demon_channel(), random_density_matrix(2, seed))
        twice = apply_channel(demon_channel(), once)
        assert np.max(np.abs(once.matrix - twice.matrix)) < 1e-10


class TestStinespring:
    def test_unitary_channel_has_trivial_environment(self):
        u = random_unitary(3, 2)
        dil = stinespring(unitary_channel(u))
        assert dil.env_dim == 1
        np.testing.assert_allclose(dil.unitary, u, atol=1e-14)

    def test_demon_throws_state_into_environment(self):
        dil = stinespring(demon_channel())
        for seed in range(20):
            psi = random_pure_state(2, seed)
            out = dil.unitary @ dil.environment_input(psi)
            np.testing.assert_allclose(out, np.kron([1, 0], psi.amplitudes), atol=1e-10)
            np.testing.assert_allclose(dil.apply_isometry(psi).amplitudes, out, atol=1e-15)

    def test_isometry_round_trip_with_loop_trace(self):
        channel = random_channel(2, 2, 3, 5)
        dil = stinespring(channel)
        for seed in range(50):
            rho = random_density_matrix(2, seed)
            big = dil.isometry @ rho.matrix @ dil.isometry.conj().T
            reduced = loop_partial_trace(big, (2, 3), [0])
            assert np.max(np.abs(reduced - apply_channel(channel, rho).matrix)) < 1e-10

    def test_unitary_round_trip(self):
        for cseed in range(50):
            channel = random_channel(2, 2, 1 + cseed % 4, cseed)
            dil = stinespring(channel)
            u = dil.unitary
            assert np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) < 1e-9
            env0 = np.zeros((dil.env_dim, dil.env_dim))
            env0[0, 0] = 1
            for sseed in range(10):
                rho = random_density_matrix(2, 1000 * cseed + sseed)
                big = u @ np.kron(rho.matrix, env0) @ u.conj().T
                reduced = linalg.reduce_operator(big, (2, dil.env_dim), [0])
                assert np.max(np.abs(reduced - apply_channel(channel, rho).matrix)) < 1e-9

    def test_isometry_property(self):
        dil = stinespring(random_channel(3, 2, 4, 9))
        v = dil.isometry
        assert np.max(np.abs(v.conj().T @ v - np.eye(3))) < 1e-9
        assert dil.unitary is None

    def test_completion_is_deterministic(self):
        a = stinespring(demon_channel()).unitary
        b = stinespring(demon_channel()).unitary
        np.testing.assert_array_equal(a, b)


class TestCnot:
    def test_classical_deletion(self):
        np.testing.assert_array_equal(cnot() @ ket("11").amplitudes, ket("10").amplitudes)
        np.testing.assert_array_equal(cnot() @ ket("00").amplitudes, ket("00").amplitudes)

    def test_is_permutation(self):
        c = cnot()
        assert np.array_equal(c @ c, np.eye(4))

    def test_plus_copies(self):
        plus = qubit(math.pi / 4)
        out = PureState(cnot() @ (plus @ plus).amplitudes)
        assert fidelity(out, plus @ plus) > 1 - 1e-12
        assert abs(fidelity(out, plus @ ket("0")) - 0.5) < 1e-12


class TestJson:
    def test_round_trip(self):
        channel = random_channel(2, 2, 3, 4)
        back = channel_from_json(channel_to_json(channel))
        for a, b in zip(channel.kraus, back.kraus):
            np.testing.assert_array_equal(a, b)

    def test_loader_revalidates(self):
        text = channel_to_json(QuantumChannel([[[1, 0], [0, 0]]]))
        with pytest.raises(InvalidChannel):
            channel_from_json(text)
