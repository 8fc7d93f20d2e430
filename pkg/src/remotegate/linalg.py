"""Dense complex linear algebra for small labelled multi-qubit systems.

States are flat complex vectors and operators are dense matrices; subsystems
are addressed through explicit, ordered label tuples. The first label is
always the most significant tensor factor, which pins down basis ordering
everywhere else in the package.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

#: Validation tolerance for Hermiticity, unit trace and positivity.
HERMITICITY_TOL = 1e-9
#: Budget for ``||H - V diag(w) V^H||`` after an eigendecomposition.
RECONSTRUCTION_TOL = 1e-10
#: Tolerance on state-vector normalization.
NORM_TOL = 1e-10
#: Measurement branches below this probability are discarded.
PROBABILITY_FLOOR = 1e-12

_JACOBI_OFFDIAG_TARGET = 1e-12
_JACOBI_MAX_SWEEPS = 100


def tensor(*factors) -> np.ndarray:
    """Kronecker product of vectors or matrices; leftmost factor is the most
    significant."""
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for factor in factors[1:]:
        out = np.kron(out, np.asarray(factor, dtype=complex))
    return out


def overlap(a, b) -> complex:
    """Inner product ``<a|b>``, conjugate-linear in the first argument."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def is_hermitian(matrix, tol: float = HERMITICITY_TOL) -> bool:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.abs(m - m.conj().T).max()) <= tol


def _jacobi(a: np.ndarray, vecs: np.ndarray | None) -> None:
    """Cyclic Jacobi sweeps, in place; `a` ends diagonal within the target
    off-diagonal norm and `vecs` (when given) accumulates the rotations."""
    n = a.shape[0]
    # Rotations below this size cannot keep the off-diagonal norm above target.
    skip = _JACOBI_OFFDIAG_TARGET / (10.0 * n * n)
    diag_mask = ~np.eye(n, dtype=bool)
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = float(np.linalg.norm(a[diag_mask]))
        if off <= _JACOBI_OFFDIAG_TARGET:
            return
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= skip:
                    continue
                ph = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(tau) + np.sqrt(1.0 + tau * tau))
                if tau < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(ph) * col_q
                a[:, q] = s * col_p + c * np.conj(ph) * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * ph * row_q
                a[q, :] = s * row_p + c * ph * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                if vecs is not None:
                    vcol_p = vecs[:, p].copy()
                    vcol_q = vecs[:, q].copy()
                    vecs[:, p] = c * vcol_p - s * np.conj(ph) * vcol_q
                    vecs[:, q] = s * vcol_p + c * np.conj(ph) * vcol_q
    raise ArithmeticError("Jacobi sweep limit reached without convergence")


def _validated_hermitian(matrix, tol: float) -> np.ndarray:
    a = np.array(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if np.abs(a - a.conj().T).max() > tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    return a


def hermitian_eig(matrix, tol: float = HERMITICITY_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(values, vectors)`` with eigenvalues sorted in descending order
    and eigenvectors as the matching columns. Off-diagonal mass is driven
    below 1e-12; if that fails within the sweep budget an ArithmeticError is
    raised.
    """
    a = _validated_hermitian(matrix, tol)
    n = a.shape[0]
    vecs = np.eye(n, dtype=complex)
    if n == 1:
        return np.array([a[0, 0].real]), vecs
    _jacobi(a, vecs)
    values = np.diagonal(a).real.copy()
    order = np.argsort(values)[::-1]
    return values[order], vecs[:, order]


def hermitian_eigenvalues(matrix, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, in descending order."""
    a = _validated_hermitian(matrix, tol)
    if a.shape[0] == 1:
        return np.array([a[0, 0].real])
    _jacobi(a, None)
    values = np.diagonal(a).real.copy()
    return values[np.argsort(values)[::-1]]


def von_neumann_entropy(rho, tol: float = HERMITICITY_TOL) -> float:
    """Base-2 von Neumann entropy ``-sum(w log2 w)`` with ``0 log 0 = 0``.

    Eigenvalues in ``[-tol, 0]`` are clamped to zero; anything below ``-tol``
    is a positivity violation and raises ValueError.
    """
    matrix = rho.matrix if isinstance(rho, DensityOp) else np.asarray(rho, dtype=complex)
    values = hermitian_eigenvalues(matrix, tol)
    if values.size and values[-1] < -tol:
        raise ValueError(f"eigenvalue {values[-1]!r} below -{tol}: not a density operator")
    w = np.clip(values, 0.0, None)
    w = w[w > 0.0]
    if w.size == 0:
        return 0.0
    return float(-(w * np.log2(w)).sum()) + 0.0  # avoid -0.0


@dataclass(frozen=True)
class PureState:
    """Normalized pure state over an ordered tuple of labelled qubits."""

    amplitudes: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate qubit labels: {labels}")
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2 ** len(labels):
            raise ValueError(
                f"{len(labels)} labels need {2 ** len(labels)} amplitudes, got {amps.size}"
            )
        if not np.isfinite(amps).all():
            raise ValueError("state has non-finite amplitudes")
        nrm = float(np.linalg.norm(amps))
        if abs(nrm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: norm = {nrm!r}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def _trusted(cls, amplitudes: np.ndarray, labels: tuple[str, ...]) -> "PureState":
        """Wrap amplitudes already known to satisfy the invariants (products
        of unitaries and renormalized projections of valid states)."""
        out = object.__new__(cls)
        amplitudes.flags.writeable = False
        object.__setattr__(out, "amplitudes", amplitudes)
        object.__setattr__(out, "labels", labels)
        return out

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def positions(self, labels: Iterable[str]) -> list[int]:
        """Axis positions of the given labels; unknown labels raise KeyError."""
        pos = []
        for lab in labels:
            if lab not in self.labels:
                raise KeyError(f"unknown qubit label {lab!r}")
            pos.append(self.labels.index(lab))
        if len(set(pos)) != len(pos):
            raise ValueError("repeated target label")
        return pos

    def tensor(self, other: "PureState") -> "PureState":
        labels = self.labels + other.labels
        if len(set(labels)) != len(labels):
            raise ValueError("tensor factors share qubit labels")
        joint = (self.amplitudes[:, None] * other.amplitudes[None, :]).reshape(-1)
        return PureState._trusted(joint, labels)

    def _front(self, labels: Sequence[str]):
        """Amplitudes as a ``(2^k, rest)`` matrix with `labels` moved in front."""
        axes = self.positions(labels)
        rest = [i for i in range(self.n_qubits) if i not in axes]
        perm = axes + rest
        m = self.amplitudes.reshape((2,) * self.n_qubits).transpose(perm)
        return m.reshape(2 ** len(axes), -1), perm

    def _from_front(self, m: np.ndarray, perm: list[int]) -> np.ndarray:
        shaped = m.reshape((2,) * self.n_qubits).transpose(np.argsort(perm))
        return np.ascontiguousarray(shaped).reshape(-1)

    def apply(self, gate, targets: Sequence[str]) -> "PureState":
        """New state with `gate` applied to `targets`, identity elsewhere."""
        targets = tuple(targets)
        gate = np.asarray(gate, dtype=complex)
        k = len(targets)
        if gate.shape != (2 ** k, 2 ** k):
            raise ValueError(f"gate of shape {gate.shape} does not fit {k} qubits")
        m, perm = self._front(targets)
        out = self._from_front(gate @ m, perm)
        if abs(np.vdot(out, out).real - 1.0) > NORM_TOL:  # unitaries preserve the norm
            raise ValueError("gate does not preserve the state norm")
        return PureState._trusted(out, self.labels)

    def reorder(self, new_labels: Sequence[str]) -> "PureState":
        new_labels = tuple(new_labels)
        if set(new_labels) != set(self.labels) or len(new_labels) != len(self.labels):
            raise ValueError("reorder needs a permutation of the existing labels")
        perm = [self.labels.index(lab) for lab in new_labels]
        shaped = self.amplitudes.reshape((2,) * self.n_qubits).transpose(perm)
        return PureState._trusted(np.ascontiguousarray(shaped).reshape(-1), new_labels)

    def reduced_density(self, keep: Sequence[str]) -> "DensityOp":
        """Reduced density operator on `keep`, in the order given."""
        keep = tuple(keep)
        m, _ = self._front(keep)
        # m @ m^H is exactly conjugate-symmetric with unit trace by construction
        return DensityOp._trusted(m @ m.conj().T, keep)

    def subsystem_fidelity(self, keep: Sequence[str], target) -> float:
        """``<target| rho_keep |target>`` without forming the density matrix."""
        m, _ = self._front(tuple(keep))
        t = np.asarray(target, dtype=complex).reshape(-1)
        if t.size != m.shape[0]:
            raise ValueError(f"dimension mismatch: {t.size} vs {m.shape[0]}")
        v = t.conj() @ m
        return float((np.abs(v) ** 2).sum())

    def collapse(self, targets: Sequence[str], basis: np.ndarray, outcome: int):
        """Probability of `outcome` when measuring `targets` in `basis`
        (columns), and the renormalized collapsed state (None if negligible)."""
        targets = tuple(targets)
        m, perm = self._front(targets)
        coeff = basis[:, outcome].conj() @ m
        p = float((np.abs(coeff) ** 2).sum())
        if p <= PROBABILITY_FLOOR:
            return p, None
        front = np.outer(basis[:, outcome], coeff / np.sqrt(p))
        return p, PureState._trusted(self._from_front(front, perm), self.labels)

    def collapse_branches(self, targets: Sequence[str], basis: np.ndarray):
        """Every measurement outcome of non-negligible probability, as a list
        of ``(outcome, probability, collapsed state)``."""
        targets = tuple(targets)
        m, perm = self._front(targets)
        coeffs = basis.conj().T @ m
        probs = (np.abs(coeffs) ** 2).sum(axis=1)
        out = []
        for j, p in enumerate(probs):
            if p <= PROBABILITY_FLOOR:
                continue
            front = np.outer(basis[:, j], coeffs[j] / np.sqrt(p))
            out.append((j, float(p), PureState._trusted(self._from_front(front, perm), self.labels)))
        return out


@dataclass(frozen=True)
class DensityOp:
    """Hermitian, unit-trace operator over an ordered tuple of labelled qubits."""

    matrix: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate qubit labels: {labels}")
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        if m.shape[0] != 2 ** len(labels):
            raise ValueError(
                f"{len(labels)} labels need a {2 ** len(labels)}-dim matrix, got {m.shape[0]}"
            )
        if np.abs(m - m.conj().T).max() > HERMITICITY_TOL:
            raise ValueError("density matrix is not Hermitian within tolerance")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > HERMITICITY_TOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def _trusted(cls, matrix: np.ndarray, labels: tuple[str, ...]) -> "DensityOp":
        """Wrap a matrix already known to be Hermitian with unit trace."""
        out = object.__new__(cls)
        matrix.flags.writeable = False
        object.__setattr__(out, "matrix", matrix)
        object.__setattr__(out, "labels", labels)
        return out

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)

    def validate_positive(self, tol: float = HERMITICITY_TOL) -> None:
        values = self.eigenvalues()
        if values[-1] < -tol:
            raise ValueError(f"eigenvalue {values[-1]!r} below -{tol}")

    def entropy(self) -> float:
        return von_neumann_entropy(self.matrix)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def fidelity_with_pure(self, psi) -> float:
        """``<psi| rho |psi>`` for a pure reference state."""
        v = np.asarray(psi, dtype=complex).reshape(-1)
        if v.size != self.dim:
            raise ValueError(f"dimension mismatch: {v.size} vs {self.dim}")
        return float(np.real(np.vdot(v, self.matrix @ v)))


def partial_trace(rho: DensityOp, keep: Iterable[str]) -> DensityOp:
    """Reduced density operator on `keep`, tracing out everything else.

    The result's labels follow the order of `keep`; the trace is preserved.
    """
    keep = tuple(keep)
    n = len(rho.labels)
    keep_axes = []
    for lab in keep:
        if lab not in rho.labels:
            raise KeyError(f"unknown qubit label {lab!r}")
        keep_axes.append(rho.labels.index(lab))
    if len(set(keep_axes)) != len(keep_axes):
        raise ValueError("repeated label in keep")
    traced = set(range(n)) - set(keep_axes)
    letters = string.ascii_lowercase + string.ascii_uppercase
    if 2 * n > len(letters):
        raise ValueError("too many qubits for partial_trace")
    row = [letters[i] for i in range(n)]
    col = [row[i] if i in traced else letters[n + i] for i in range(n)]
    out = [row[a] for a in keep_axes] + [col[a] for a in keep_axes]
    sub = "".join(row + col) + "->" + "".join(out)
    k = len(keep)
    reduced = np.einsum(sub, rho.matrix.reshape((2,) * (2 * n))).reshape(2 ** k, 2 ** k)
    return DensityOp(reduced, keep)
