"""Exact simulation of two-party protocols that apply a unitary gate to a
remote qubit using only local operations, classical communication and shared
entanglement, with per-direction resource accounting.

Layers, bottom up: :mod:`~remotegate.linalg` (dense linear algebra over
labelled qubits), :mod:`~remotegate.gates` (Pauli/Bell/Haar library),
:mod:`~remotegate.runtime` (two-party runtime enforcing locality and counting
ebits and classical bits), :mod:`~remotegate.protocols` (the protocols and
their no-go witnesses), :mod:`~remotegate.bounds` (resource bound checks),
and :mod:`~remotegate.cli` (scenario runner).
"""

from .bounds import (BoundCheck, bipartite_entanglement, check_lower_bounds,
                     check_upper_bound)
from .gates import (BELL_BASIS, HADAMARD, PAULIS, SWAP_GATE, bell_measure,
                    bell_measure_branches, bell_state, haar_state, haar_unitary,
                    ket, pauli, pauli_decompose, pauli_reconstruct,
                    require_unitary, u_psi_for)
from .linalg import (DensityOp, PureState, hermitian_eig, hermitian_eigenvalues,
                     is_hermitian, overlap, partial_trace, tensor,
                     von_neumann_entropy)
from .protocols import (ControlEncoding, EntanglementBranch, ProtocolReport,
                        ancilla_independence_check, bidirectional_u_teleport,
                        control_orthogonality_witness, control_state_teleport,
                        dense_coding_bound_demo, entanglement_bound_demo,
                        g1_state_transfer_check, pauli_control_encoding,
                        teleport_state, trivial_g1_nogo_check)
from .runtime import (ALICE, BOB, ENUMERATE, SAMPLE, Branch, LoccRuntime,
                      OwnershipError, ResourceLedger)

__version__ = "0.1.0"

__all__ = [
    "ALICE",
    "BELL_BASIS",
    "BOB",
    "BoundCheck",
    "Branch",
    "ControlEncoding",
    "DensityOp",
    "ENUMERATE",
    "EntanglementBranch",
    "HADAMARD",
    "LoccRuntime",
    "OwnershipError",
    "PAULIS",
    "ProtocolReport",
    "PureState",
    "ResourceLedger",
    "SAMPLE",
    "SWAP_GATE",
    "ancilla_independence_check",
    "bell_measure",
    "bell_measure_branches",
    "bell_state",
    "bidirectional_u_teleport",
    "bipartite_entanglement",
    "check_lower_bounds",
    "check_upper_bound",
    "control_orthogonality_witness",
    "control_state_teleport",
    "dense_coding_bound_demo",
    "entanglement_bound_demo",
    "g1_state_transfer_check",
    "haar_state",
    "haar_unitary",
    "hermitian_eig",
    "hermitian_eigenvalues",
    "is_hermitian",
    "ket",
    "overlap",
    "partial_trace",
    "pauli",
    "pauli_control_encoding",
    "pauli_decompose",
    "pauli_reconstruct",
    "require_unitary",
    "teleport_state",
    "tensor",
    "trivial_g1_nogo_check",
    "u_psi_for",
    "von_neumann_entropy",
]
