"""Protocol layer: exact state transfer, the two-teleport remote gate, the
control-register alternative, and the bound/no-go witnesses."""

import numpy as np
import pytest

from remotegate.gates import (HADAMARD, bell_state, haar_state, haar_unitary,
                              ket, pauli, pauli_decompose)
from remotegate.linalg import PureState
from remotegate.protocols import (ControlEncoding, ancilla_independence_check,
                                  bidirectional_u_teleport,
                                  control_orthogonality_witness,
                                  control_state_teleport,
                                  dense_coding_bound_demo,
                                  entanglement_bound_demo,
                                  g1_state_transfer_check,
                                  pauli_control_encoding, teleport_state,
                                  trivial_g1_nogo_check)
from remotegate.runtime import ALICE, BOB, ENUMERATE, LoccRuntime, ResourceLedger

RNG = np.random.default_rng


def enum_rt():
    return LoccRuntime(mode=ENUMERATE)


class TestTeleportState:
    def test_zero_ket_all_branches(self):
        rt = enum_rt()

        def script(r):
            r.add_qubit(ALICE, "src", [1.0, 0.0])
            r.distribute_bell_pair("keep", "dst")
            teleport_state(r, "src", "dst")

        branches = rt.run_enumerated(script)
        assert len(branches) == 4
        for b in branches:
            assert b.probability == pytest.approx(0.25, abs=1e-12)
            assert b.state.subsystem_fidelity(("dst",), [1.0, 0.0]) == pytest.approx(1.0, abs=1e-10)
        assert rt.ledger == ResourceLedger(ebits_consumed=1, cbits_a_to_b=2)

    def test_random_state_fidelity_one_everywhere(self):
        rng = RNG(40)
        for _ in range(10):
            psi = haar_state(rng)
            rt = enum_rt()

            def script(r, psi=psi):
                r.add_qubit(BOB, "src", psi)
                r.distribute_bell_pair("dst", "keep")
                teleport_state(r, "src", "dst")

            for b in rt.run_enumerated(script):
                assert b.state.subsystem_fidelity(("dst",), psi) >= 1.0 - 1e-10
            assert rt.ledger == ResourceLedger(ebits_consumed=1, cbits_b_to_a=2)

    def test_entanglement_swaps_intact(self):
        # teleporting one half of an entangled pair carries the entanglement
        rt = enum_rt()

        def script(r):
            r.add_register(BOB, ("src", "friend"), bell_state(2))
            r.distribute_bell_pair("dst", "keep")
            teleport_state(r, "src", "dst")

        for b in rt.run_enumerated(script):
            assert b.state.subsystem_fidelity(("dst", "friend"), bell_state(2)) \
                == pytest.approx(1.0, abs=1e-10)

    def test_missing_pair_is_an_error(self):
        rt = LoccRuntime(mode="sample")
        rt.add_qubit(ALICE, "src", [1.0, 0.0])
        rt.add_qubit(BOB, "dst", [1.0, 0.0])
        with pytest.raises(ValueError):
            teleport_state(rt, "src", "dst")

    def test_same_side_rejected(self):
        rt = LoccRuntime(mode="sample")
        rt.add_qubit(ALICE, "src", [1.0, 0.0])
        rt.add_qubit(ALICE, "dst", [1.0, 0.0])
        with pytest.raises(ValueError):
            teleport_state(rt, "src", "dst")


class TestBidirectional:
    def test_identity_gate_ledger(self):
        psi = np.array([0.6, 0.8])
        rt = enum_rt()
        report = bidirectional_u_teleport(rt, np.eye(2), psi)
        assert rt.ledger == ResourceLedger(2, 2, 2)
        assert report.fidelity == pytest.approx(1.0, abs=1e-10)
        assert report.branches == 16
        assert report.all_passed

    def test_bit_flip(self):
        rt = enum_rt()
        report = bidirectional_u_teleport(rt, pauli(1), [1.0, 0.0])
        assert report.fidelity == pytest.approx(1.0, abs=1e-10)
        for b in rt.branches:
            assert b.state.subsystem_fidelity(("beta",), [0.0, 1.0]) >= 1.0 - 1e-10

    def test_haar_sweep(self):
        rng = RNG(41)
        worst = 1.0
        for _ in range(100):
            rt = enum_rt()
            report = bidirectional_u_teleport(rt, haar_unitary(rng), haar_state(rng))
            worst = min(worst, report.fidelity)
            assert rt.ledger == ResourceLedger(2, 2, 2)
        assert worst >= 1.0 - 1e-9

    def test_no_entanglement_left_across_cut(self):
        rt = enum_rt()
        report = bidirectional_u_teleport(rt, HADAMARD, [1.0, 0.0])
        assert report.entropies["final_cut_entanglement_max"] == pytest.approx(0.0, abs=1e-9)

    def test_linearity_reconstruction(self):
        # the protocol output equals the Pauli-coefficient sum applied directly
        rng = RNG(42)
        for _ in range(10):
            gate = haar_unitary(rng)
            psi = haar_state(rng)
            alpha = pauli_decompose(gate)
            expected = sum(alpha[mu] * (pauli(mu) @ psi) for mu in range(4))
            rt = enum_rt()
            bidirectional_u_teleport(rt, gate, psi)
            for b in rt.branches:
                assert b.state.subsystem_fidelity(("beta",), expected) >= 1.0 - 1e-10

    def test_rejects_unnormalized_input(self):
        with pytest.raises(ValueError):
            bidirectional_u_teleport(enum_rt(), np.eye(2), [1.0, 1.0])

    def test_rejects_non_unitary_gate(self):
        with pytest.raises(ValueError):
            bidirectional_u_teleport(enum_rt(), np.array([[1.0, 1.0], [0.0, 1.0]]), [1.0, 0.0])


class TestControlEncoding:
    def test_pauli_encoding_shape(self):
        enc = pauli_control_encoding()
        assert enc.control_dim == 4
        assert enc.n_control_qubits == 2
        assert enc.n_active == 4

    def test_padding_to_power_of_two(self):
        enc = ControlEncoding.from_unitaries([np.eye(2), pauli(1), pauli(3)])
        assert enc.control_dim == 4
        assert enc.n_active == 3
        with pytest.raises(ValueError):
            enc.state_for(3)  # padded slot

    def test_controlled_gate_block_structure(self):
        enc = pauli_control_encoding()
        w = enc.controlled_gate()
        for k in range(4):
            block = w[2 * k:2 * k + 2, 2 * k:2 * k + 2]
            np.testing.assert_allclose(block, pauli(k), atol=1e-15)

    def test_non_orthogonal_states_rejected(self):
        states = [ket("00"), ket("00"), ket("10"), ket("11")]
        with pytest.raises(ValueError):
            ControlEncoding.from_unitaries([pauli(mu) for mu in range(4)], states)

    def test_superposition_amplitudes(self):
        enc = pauli_control_encoding()
        amp = np.zeros(4)
        amp[0] = amp[1] = 1 / np.sqrt(2)
        ketv = enc.state_for(amp)
        np.testing.assert_allclose(ketv, (ket("00") + ket("01")) / np.sqrt(2), atol=1e-12)
        with pytest.raises(ValueError):
            enc.state_for(np.array([1.0, 1.0, 0.0, 0.0]))  # unnormalized


class TestControlStateTeleport:
    def test_bit_flip_slot(self):
        rt = enum_rt()
        report = control_state_teleport(rt, pauli_control_encoding(), 1, [1.0, 0.0])
        assert rt.ledger == ResourceLedger(ebits_consumed=2, cbits_a_to_b=4, cbits_b_to_a=0)
        assert report.fidelity == pytest.approx(1.0, abs=1e-9)
        assert report.branches == 16
        for b in rt.branches:
            assert b.state.subsystem_fidelity(("beta",), [0.0, 1.0]) >= 1.0 - 1e-9

    def test_identity_slot_leaves_input(self):
        psi = np.array([0.8, 0.6j])
        rt = enum_rt()
        report = control_state_teleport(rt, pauli_control_encoding(), 0, psi)
        assert report.fidelity == pytest.approx(1.0, abs=1e-9)

    def test_all_slots(self):
        rng = RNG(43)
        enc = pauli_control_encoding()
        for k in range(4):
            psi = haar_state(rng)
            rt = enum_rt()
            control_state_teleport(rt, enc, k, psi)
            expected = pauli(k) @ psi
            for b in rt.branches:
                assert b.state.subsystem_fidelity(("beta",), expected) >= 1.0 - 1e-9

    def test_superposed_control_entangles_output(self):
        # oracle: directly constructed mixture of the two gated states
        enc = pauli_control_encoding()
        psi = haar_state(RNG(44))
        amp = np.zeros(4)
        amp[0] = amp[1] = 1 / np.sqrt(2)
        rt = enum_rt()
        report = control_state_teleport(rt, enc, amp, psi)
        assert report.fidelity == pytest.approx(1.0, abs=1e-9)
        expected_beta = 0.5 * (np.outer(psi, psi.conj())
                               + np.outer(pauli(1) @ psi, (pauli(1) @ psi).conj()))
        for b in rt.branches:
            np.testing.assert_allclose(
                b.state.reduced_density(("beta",)).matrix, expected_beta, atol=1e-9
            )

    def test_slot_out_of_range(self):
        with pytest.raises(ValueError):
            control_state_teleport(enum_rt(), pauli_control_encoding(), 4, [1.0, 0.0])


class TestDenseCoding:
    @pytest.mark.parametrize("mu", [0, 1, 2, 3])
    def test_decodes_every_slot_on_every_branch(self, mu):
        rt = enum_rt()
        assert dense_coding_bound_demo(rt, mu) == mu
        assert len(rt.branches) == 16
        assert rt.ledger.cbits_a_to_b >= 2

    def test_rejects_bad_slot(self):
        with pytest.raises(ValueError):
            dense_coding_bound_demo(enum_rt(), 5)


class TestEntanglementBound:
    def test_every_branch_carries_two_ebits(self):
        e_min, per_branch = entanglement_bound_demo()
        assert len(per_branch) == 16
        assert e_min >= 2.0 - 1e-9
        for branch in per_branch:
            assert branch.entropy == pytest.approx(2.0, abs=1e-9)
            assert branch.identity_gap <= 1e-9
            for s in branch.component_entropies:
                assert abs(s) <= 1e-9  # ancilla disentangles, components pure

    def test_ledger_matches_bidirectional_cost(self):
        rt = enum_rt()
        entanglement_bound_demo(rt)
        assert rt.ledger == ResourceLedger(2, 2, 2)


class TestAncillaIndependence:
    def test_two_paulis_same_input(self):
        assert ancilla_independence_check([pauli(0), pauli(1)], [np.array([1.0, 0.0])]) <= 1e-9

    def test_same_gate_orthogonal_inputs(self):
        states = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
        assert ancilla_independence_check([HADAMARD], states) <= 1e-9

    def test_haar_grid(self):
        rng = RNG(45)
        gates = [haar_unitary(rng) for _ in range(3)]
        states = [haar_state(rng) for _ in range(3)]
        assert ancilla_independence_check(gates, states) <= 1e-9


class TestG1Transfer:
    def test_zero_ket(self):
        purity, fidelity = g1_state_transfer_check([1.0, 0.0])
        assert purity == pytest.approx(1.0, abs=1e-10)
        assert fidelity == pytest.approx(1.0, abs=1e-10)

    def test_plus_state(self):
        plus = np.array([1.0, 1.0]) / np.sqrt(2)
        purity, fidelity = g1_state_transfer_check(plus)
        assert fidelity >= 1.0 - 1e-10

    def test_haar_inputs(self):
        rng = RNG(46)
        for _ in range(10):
            purity, fidelity = g1_state_transfer_check(haar_state(rng))
            assert purity >= 1.0 - 1e-9
            assert fidelity >= 1.0 - 1e-9


class TestTrivialG1NoGo:
    def test_canonical_example(self):
        # inputs |0>, |1>; identity forces the constructed partner to sigma_x
        deficit = trivial_g1_nogo_check(bell_state(0), [1.0, 0.0], [0.0, 1.0], np.eye(2))
        assert deficit == pytest.approx(1.0, abs=1e-12)

    def test_explicit_gate_pair(self):
        deficit = trivial_g1_nogo_check(
            bell_state(0), [1.0, 0.0], [0.0, 1.0], np.eye(2), gate_prime=pauli(1)
        )
        assert deficit == pytest.approx(1.0, abs=1e-12)

    def test_random_constructions(self):
        rng = RNG(47)
        from remotegate.gates import u_psi_for

        for _ in range(50):
            psi = haar_state(rng)
            psi_prime = u_psi_for(psi).conj().T[:, 1]
            chi = haar_state(rng, dim=8)
            deficit = trivial_g1_nogo_check(chi, psi, psi_prime, haar_unitary(rng))
            assert deficit == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_inputs_rejected(self):
        psi = np.array([1.0, 0.0])
        with pytest.raises(ValueError):
            trivial_g1_nogo_check(bell_state(0), psi, psi, np.eye(2))

    def test_inconsistent_explicit_pair_rejected(self):
        with pytest.raises(ValueError):
            trivial_g1_nogo_check(
                bell_state(0), [1.0, 0.0], [0.0, 1.0], np.eye(2), gate_prime=np.eye(2)
            )


class TestOrthogonalityWitness:
    def test_identical_gates(self):
        u = haar_unitary(3)
        spread, proportional = control_orthogonality_witness(u, u)
        assert spread <= 1e-10
        assert proportional

    def test_global_phase(self):
        u = haar_unitary(4)
        spread, proportional = control_orthogonality_witness(u, np.exp(0.7j) * u)
        assert spread <= 1e-10
        assert proportional

    def test_identity_versus_z(self):
        spread, proportional = control_orthogonality_witness(np.eye(2), pauli(3), 200, seed=1)
        assert spread > 0.9
        assert not proportional

    def test_random_pairs_are_visibly_distinct(self):
        rng = RNG(48)
        for _ in range(20):
            spread, proportional = control_orthogonality_witness(
                haar_unitary(rng), haar_unitary(rng), seed=rng
            )
            assert not proportional
            assert spread > 1e-3
