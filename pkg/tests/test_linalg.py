"""Linear-algebra layer: tensor products, partial trace, Jacobi
eigendecomposition and entropy, checked against independent oracles."""

import numpy as np
import pytest

from remotegate.linalg import (DensityOp, PureState, hermitian_eig,
                               hermitian_eigenvalues, is_hermitian, overlap,
                               partial_trace, tensor, von_neumann_entropy)

RNG = np.random.default_rng


def kron_oracle(a, b):
    """Elementwise Kronecker product, independent of np.kron."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    out = np.zeros((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            out[i * b.shape[0]:(i + 1) * b.shape[0], j * b.shape[1]:(j + 1) * b.shape[1]] = a[i, j] * b
    return out


def ptrace_oracle(rho, n, keep):
    """Explicit index-summation partial trace of an n-qubit density matrix."""
    keep = list(keep)
    traced = [i for i in range(n) if i not in keep]
    k = len(keep)
    out = np.zeros((2 ** k, 2 ** k), dtype=complex)
    for i in range(2 ** k):
        for j in range(2 ** k):
            ibits = [(i >> (k - 1 - a)) & 1 for a in range(k)]
            jbits = [(j >> (k - 1 - a)) & 1 for a in range(k)]
            for t in range(2 ** len(traced)):
                tbits = [(t >> (len(traced) - 1 - a)) & 1 for a in range(len(traced))]
                row = [0] * n
                col = [0] * n
                for a, pos in enumerate(keep):
                    row[pos] = ibits[a]
                    col[pos] = jbits[a]
                for a, pos in enumerate(traced):
                    row[pos] = tbits[a]
                    col[pos] = tbits[a]
                r = int("".join(map(str, row)), 2)
                c = int("".join(map(str, col)), 2)
                out[i, j] += rho[r, c]
    return out


class TestTensor:
    def test_basis_kets(self):
        ket0 = np.array([1, 0])
        ket1 = np.array([0, 1])
        np.testing.assert_array_equal(tensor(ket0, ket1), [0, 1, 0, 0])

    def test_identity(self):
        np.testing.assert_array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))

    def test_distributes_over_products(self):
        rng = RNG(1)
        for _ in range(20):
            a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            y = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            lhs = tensor(a, b) @ tensor(x, y)
            rhs = tensor(a @ x, b @ y)
            np.testing.assert_allclose(lhs, rhs, atol=1e-12)
            np.testing.assert_allclose(tensor(a, b), kron_oracle(a, b), atol=0)

    def test_variadic(self):
        rng = RNG(2)
        a, b, c = (rng.standard_normal((2, 2)) for _ in range(3))
        np.testing.assert_allclose(tensor(a, b, c), np.kron(np.kron(a, b), c))


class TestOverlap:
    def test_orthonormal_basis(self):
        assert overlap([1, 0], [1, 0]) == 1
        assert overlap([1, 0], [0, 1]) == 0

    def test_bell_pair_overlap_is_zero(self):
        b0 = np.array([1, 0, 0, 1]) / np.sqrt(2)
        b3 = np.array([1, 0, 0, -1]) / np.sqrt(2)
        # explicit four-component sum
        expected = sum(np.conj(b0[i]) * b3[i] for i in range(4))
        assert expected == 0
        assert abs(overlap(b0, b3) - expected) <= 1e-15

    def test_conjugate_linear_in_first_argument(self):
        a = np.array([1j, 2.0])
        b = np.array([3.0, -1j])
        assert overlap(2j * a, b) == pytest.approx(np.conj(2j) * overlap(a, b))

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            overlap([1, 0], [1, 0, 0])


class TestHermitianEig:
    def test_sigma_z(self):
        values = hermitian_eigenvalues(np.diag([1.0, -1.0]))
        np.testing.assert_allclose(values, [1.0, -1.0])

    def test_maximally_mixed(self):
        values = hermitian_eigenvalues(np.eye(2) / 2)
        np.testing.assert_allclose(values, [0.5, 0.5])

    def test_quadratic_formula_oracle(self):
        rng = RNG(3)
        for _ in range(50):
            a, d = rng.standard_normal(2)
            b = rng.standard_normal() + 1j * rng.standard_normal()
            h = np.array([[a, b], [np.conj(b), d]])
            mean = (a + d) / 2
            radius = np.sqrt(((a - d) / 2) ** 2 + abs(b) ** 2)
            expected = np.array([mean + radius, mean - radius])
            np.testing.assert_allclose(hermitian_eigenvalues(h), expected, atol=1e-12)

    @pytest.mark.parametrize("dim", [2, 3, 5, 8, 17, 32, 64])
    def test_reconstruction_up_to_dim_64(self, dim):
        rng = RNG(dim)
        z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        h = z + z.conj().T
        values, vectors = hermitian_eig(h)
        recon = vectors @ np.diag(values) @ vectors.conj().T
        assert np.abs(recon - h).max() <= 1e-10
        # independent oracle
        np.testing.assert_allclose(values, np.sort(np.linalg.eigvalsh(h))[::-1], atol=1e-10)
        assert np.all(np.diff(values) <= 1e-12)  # descending

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_is_hermitian(self):
        assert is_hermitian(np.eye(3))
        assert not is_hermitian(np.array([[0, 1], [0, 0]]))
        assert not is_hermitian(np.ones((2, 3)))


class TestEntropy:
    def test_pure_state_is_zero(self):
        rho = np.outer([1, 0], [1, 0]).astype(complex)
        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-10)

    def test_maximally_mixed_qubit(self):
        assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-10)

    def test_two_ebit_value(self):
        assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-10)

    def test_clamps_tiny_negative_eigenvalues(self):
        rho = np.diag([1.0 + 5e-10, -5e-10])
        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-8)

    def test_rejects_genuinely_negative(self):
        with pytest.raises(ValueError):
            von_neumann_entropy(np.diag([1.5, -0.5]))

    def test_range_and_additivity(self):
        rng = RNG(7)
        for _ in range(10):
            p = rng.random(4)
            p /= p.sum()
            q = rng.random(2)
            q /= q.sum()
            s_p = von_neumann_entropy(np.diag(p))
            s_q = von_neumann_entropy(np.diag(q))
            assert 0.0 <= s_p <= 2.0 + 1e-12
            joint = tensor(np.diag(p), np.diag(q))
            assert von_neumann_entropy(joint) == pytest.approx(s_p + s_q, abs=1e-9)

    def test_unitary_invariance(self):
        from remotegate.gates import haar_unitary

        rng = RNG(8)
        for _ in range(10):
            p = rng.random(4)
            p /= p.sum()
            rho = np.diag(p).astype(complex)
            u = haar_unitary(rng, dim=4)
            assert von_neumann_entropy(u @ rho @ u.conj().T) == pytest.approx(
                von_neumann_entropy(rho), abs=1e-9
            )


class TestPureState:
    def test_validates_normalization(self):
        with pytest.raises(ValueError):
            PureState([1.0, 1.0], ("q",))

    def test_validates_size_and_labels(self):
        with pytest.raises(ValueError):
            PureState([1.0, 0.0, 0.0], ("q", "r"))
        with pytest.raises(ValueError):
            PureState([0.5] * 4, ("q", "q"))

    def test_apply_matches_full_kron(self):
        rng = RNG(9)
        from remotegate.gates import haar_state, haar_unitary

        psi = PureState(haar_state(rng, dim=8), ("x", "y", "z"))
        u = haar_unitary(rng)
        # oracle: gate on the middle qubit via explicit kron
        full = np.kron(np.kron(np.eye(2), u), np.eye(2))
        np.testing.assert_allclose(
            psi.apply(u, ("y",)).amplitudes, full @ psi.amplitudes, atol=1e-12
        )

    def test_apply_two_qubit_reversed_targets(self):
        from remotegate.gates import SWAP_GATE, haar_state

        rng = RNG(10)
        psi = PureState(haar_state(rng, dim=4), ("a", "b"))
        swapped = psi.apply(SWAP_GATE, ("a", "b"))
        np.testing.assert_allclose(
            swapped.amplitudes, psi.reorder(("b", "a")).amplitudes, atol=1e-12
        )

    def test_apply_rejects_norm_breaking_gate(self):
        psi = PureState([1.0, 0.0], ("q",))
        with pytest.raises(ValueError):
            psi.apply(np.array([[2.0, 0.0], [0.0, 2.0]]), ("q",))

    def test_unknown_label(self):
        psi = PureState([1.0, 0.0], ("q",))
        with pytest.raises(KeyError):
            psi.apply(np.eye(2), ("r",))

    def test_collapse_probabilities(self):
        plus = PureState(np.array([1.0, 1.0]) / np.sqrt(2), ("q",))
        branches = plus.collapse_branches(("q",), np.eye(2, dtype=complex))
        assert [b[0] for b in branches] == [0, 1]
        for _, p, state in branches:
            assert p == pytest.approx(0.5, abs=1e-12)
            assert np.linalg.norm(state.amplitudes) == pytest.approx(1.0, abs=1e-12)

    def test_subsystem_fidelity_matches_density_route(self):
        from remotegate.gates import haar_state

        rng = RNG(11)
        psi = PureState(haar_state(rng, dim=8), ("x", "y", "z"))
        target = haar_state(rng)
        direct = psi.subsystem_fidelity(("y",), target)
        via_rho = psi.reduced_density(("y",)).fidelity_with_pure(target)
        assert direct == pytest.approx(via_rho, abs=1e-12)


class TestDensityOp:
    def test_validation(self):
        with pytest.raises(ValueError):
            DensityOp(np.array([[0.5, 0.5], [0.0, 0.5]]), ("q",))  # not Hermitian
        with pytest.raises(ValueError):
            DensityOp(np.eye(2), ("q",))  # trace 2

    def test_purity_and_fidelity(self):
        rho = DensityOp(np.eye(2) / 2, ("q",))
        assert rho.purity() == pytest.approx(0.5, abs=1e-12)
        assert rho.fidelity_with_pure([1, 0]) == pytest.approx(0.5, abs=1e-12)


class TestPartialTrace:
    def test_bell_pair_marginal(self):
        b0 = np.array([1, 0, 0, 1]) / np.sqrt(2)
        rho = DensityOp(np.outer(b0, b0.conj()), ("a", "b"))
        reduced = partial_trace(rho, ("a",))
        np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-12)

    def test_product_state(self):
        from remotegate.gates import haar_state

        rng = RNG(12)
        psi = haar_state(rng)
        phi = haar_state(rng)
        joint = np.kron(psi, phi)
        rho = DensityOp(np.outer(joint, joint.conj()), ("a", "b"))
        np.testing.assert_allclose(
            partial_trace(rho, ("a",)).matrix, np.outer(psi, psi.conj()), atol=1e-12
        )

    def test_against_index_summation_oracle(self):
        from remotegate.gates import haar_state

        rng = RNG(13)
        for _ in range(30):
            vec = haar_state(rng, dim=8)
            rho = DensityOp(np.outer(vec, vec.conj()), ("q0", "q1", "q2"))
            reduced = partial_trace(rho, ("q0",))
            np.testing.assert_allclose(
                reduced.matrix, ptrace_oracle(rho.matrix, 3, [0]), atol=1e-11
            )
            pair = partial_trace(rho, ("q2", "q0"))
            np.testing.assert_allclose(
                pair.matrix, ptrace_oracle(rho.matrix, 3, [2, 0]), atol=1e-11
            )

    def test_preserves_trace_and_hermiticity(self):
        from remotegate.gates import haar_state

        rng = RNG(14)
        vec = haar_state(rng, dim=16)
        rho = DensityOp(np.outer(vec, vec.conj()), ("a", "b", "c", "d"))
        reduced = partial_trace(rho, ("b", "d"))
        assert abs(np.trace(reduced.matrix) - 1.0) <= 1e-12
        assert np.abs(reduced.matrix - reduced.matrix.conj().T).max() <= 1e-12

    def test_matches_pure_state_reduction(self):
        from remotegate.gates import haar_state

        rng = RNG(15)
        vec = haar_state(rng, dim=8)
        state = PureState(vec, ("x", "y", "z"))
        rho = DensityOp(np.outer(vec, vec.conj()), ("x", "y", "z"))
        np.testing.assert_allclose(
            state.reduced_density(("z", "x")).matrix,
            partial_trace(rho, ("z", "x")).matrix,
            atol=1e-12,
        )

    def test_unknown_label(self):
        rho = DensityOp(np.eye(2) / 2, ("q",))
        with pytest.raises(KeyError):
            partial_trace(rho, ("nope",))
