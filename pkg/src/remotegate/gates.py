"""Canonical gates and states: the Pauli family, the Bell basis generated
from it, Haar-random sampling, Pauli-basis decomposition, and measurement in
the Bell basis."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .linalg import PureState, tensor

UNITARITY_TOL = 1e-12


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=complex)
    arr.flags.writeable = False
    return arr


IDENTITY_2 = _frozen([[1, 0], [0, 1]])
SIGMA_X = _frozen([[0, 1], [1, 0]])
SIGMA_Y = _frozen([[0, -1j], [1j, 0]])
SIGMA_Z = _frozen([[1, 0], [0, -1]])
#: Operator basis for 2x2 matrices: identity first, then x, y, z.
PAULIS = (IDENTITY_2, SIGMA_X, SIGMA_Y, SIGMA_Z)

HADAMARD = _frozen(np.array([[1, 1], [1, -1]]) / np.sqrt(2.0))
SWAP_GATE = _frozen([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])

_BELL_0 = _frozen(np.array([1, 0, 0, 1]) / np.sqrt(2.0))
# Index mu generated by acting with Pauli mu on the first qubit of pair 0,
# global phase included (pair 2 therefore carries +-i amplitudes).
_BELL_STATES = tuple(_frozen(tensor(PAULIS[mu], IDENTITY_2) @ _BELL_0) for mu in range(4))
#: Columns are the four Bell states, in order.
BELL_BASIS = _frozen(np.stack(_BELL_STATES, axis=1))


def pauli(mu: int) -> np.ndarray:
    """Pauli operator number `mu`: identity for 0, then x, y, z."""
    if mu not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be in 0..3, got {mu!r}")
    return PAULIS[mu]


def bell_state(mu: int) -> np.ndarray:
    """Maximally entangled two-qubit state number `mu`.

    Ordered so that applying Pauli `mu` to the first qubit of state 0 yields
    state `mu` exactly, including the global phase.
    """
    if mu not in (0, 1, 2, 3):
        raise ValueError(f"Bell index must be in 0..3, got {mu!r}")
    return _BELL_STATES[mu]


def ket(bits: str) -> np.ndarray:
    """Computational basis ket from a bit string, e.g. ``ket("01")``."""
    if not bits or any(b not in "01" for b in bits):
        raise ValueError(f"expected a non-empty bit string, got {bits!r}")
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def require_unitary(gate, tol: float = UNITARITY_TOL) -> np.ndarray:
    g = np.asarray(gate, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError("gate must be a square matrix")
    if np.abs(g.conj().T @ g - np.eye(g.shape[0])).max() > tol:
        raise ValueError("matrix is not unitary within tolerance")
    return g


def pauli_decompose(gate) -> np.ndarray:
    """Coefficients ``alpha`` with ``gate = sum_mu alpha[mu] * pauli(mu)``,
    computed as ``trace(pauli(mu) @ gate) / 2``."""
    g = np.asarray(gate, dtype=complex)
    if g.shape != (2, 2):
        raise ValueError(f"pauli_decompose expects a 2x2 matrix, got {g.shape}")
    return np.array([np.trace(PAULIS[mu] @ g) / 2.0 for mu in range(4)])


def pauli_reconstruct(alpha) -> np.ndarray:
    """Rebuild the 2x2 matrix from its Pauli coefficients."""
    a = np.asarray(alpha, dtype=complex).reshape(-1)
    if a.shape != (4,):
        raise ValueError("expected four coefficients")
    out = np.zeros((2, 2), dtype=complex)
    for mu in range(4):
        out += a[mu] * PAULIS[mu]
    return out


def as_rng(seed) -> np.random.Generator:
    """Pass Generators through, otherwise seed a fresh one."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_unitary(seed, dim: int = 2) -> np.ndarray:
    """Unitary drawn from the invariant measure; deterministic per seed.

    QR of a complex standard-Gaussian matrix, with the phases of the R
    diagonal folded back in so the distribution is exactly invariant.
    """
    if dim < 2:
        raise ValueError("haar_unitary needs dim >= 2")
    rng = as_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r).copy()
    d[np.abs(d) < 1e-300] = 1.0
    return q * (d / np.abs(d))


def haar_state(seed, dim: int = 2) -> np.ndarray:
    """State vector drawn uniformly from the unit sphere."""
    rng = as_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    n = np.linalg.norm(v)
    if n == 0.0:  # measure-zero draw
        v[0] = 1.0
        n = 1.0
    return v / n


def u_psi_for(psi) -> np.ndarray:
    """A unitary taking `psi` to the computational 0-ket; its first row is
    the conjugate of `psi` and the second row completes the basis."""
    v = np.asarray(psi, dtype=complex).reshape(-1)
    if v.shape != (2,):
        raise ValueError("expected a single-qubit state")
    n = float(np.linalg.norm(v))
    if n < 1e-12:
        raise ValueError("zero vector has no transport unitary")
    a, b = v / n
    return np.array([[np.conj(a), np.conj(b)], [-b, a]])


def bell_measure_branches(state: PureState, pair: Sequence[str]):
    """All Bell-measurement outcomes on the two labelled qubits, with their
    probabilities and collapsed states."""
    pair = tuple(pair)
    if len(pair) != 2:
        raise ValueError("Bell measurement needs exactly two qubits")
    return state.collapse_branches(pair, BELL_BASIS)


def bell_measure(state: PureState, pair: Sequence[str], seed=None):
    """Sample one Bell-measurement outcome; returns ``(outcome, probability,
    collapsed state)``."""
    branches = bell_measure_branches(state, pair)
    rng = as_rng(seed)
    weights = np.array([p for _, p, _ in branches])
    weights = weights / weights.sum()
    return branches[int(rng.choice(len(branches), p=weights))]
