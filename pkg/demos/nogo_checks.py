"""Three numerical witnesses for structural facts about remote gates.

1. Orthogonality witness: two gates that are not equal up to a global phase
   produce a visibly spread-out set of expectation values over random
   states. A faithful finite control register must therefore assign
   genuinely different gates orthogonal, distinguishable control states.

2. Trivial pre-processing is fatal: if nothing happens before the gate acts
   on the near side, the fixed post-processing step would have to map two
   orthogonal global inputs onto one common output - an overlap deficit of
   exactly 1 that no unitary can close.

3. Forced transfer: in any working two-stage scheme the pre-processing
   stage must already have moved the remote input, whatever it is, onto the
   near-side qubit; the demo shows the near qubit pure and equal to the
   input on every measurement branch.
"""

import numpy as np

from remotegate import (control_orthogonality_witness, g1_state_transfer_check,
                        haar_state, haar_unitary, pauli, trivial_g1_nogo_check,
                        u_psi_for)


def main():
    rng = np.random.default_rng(7)

    print("1. expectation-value spread over 100 sampled states")
    identity = np.eye(2)
    for name, other in [("identity vs z-flip", pauli(3)),
                        ("identity vs phase * identity", np.exp(0.3j) * identity),
                        ("two Haar gates", haar_unitary(rng))]:
        spread, proportional = control_orthogonality_witness(identity, other, seed=rng)
        print(f"   {name:30s} spread {spread:.3e}, same up to phase: {proportional}")

    print("\n2. overlap deficit with no pre-processing stage")
    for trial in range(3):
        psi = haar_state(rng)
        psi_prime = u_psi_for(psi).conj().T[:, 1]  # orthogonal partner
        chi = haar_state(rng, dim=8)
        deficit = trivial_g1_nogo_check(chi, psi, psi_prime, haar_unitary(rng))
        print(f"   random construction {trial}: deficit {deficit:.15f}")

    print("\n3. the pre-processing stage must transfer the input state")
    for trial in range(3):
        purity, fidelity = g1_state_transfer_check(haar_state(rng))
        print(f"   random input {trial}: near-qubit purity {purity:.12f}, "
              f"fidelity to input {fidelity:.12f}")


if __name__ == "__main__":
    main()
