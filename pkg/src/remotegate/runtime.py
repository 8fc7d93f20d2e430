"""Two-party execution environment: local operations, classical messaging,
entanglement distribution, and exact measurement-branch bookkeeping.

Locality is enforced through qubit ownership: a party may only gate or
measure qubits it owns, every shared Bell pair and every classical bit goes
through the ledger, and a runtime in enumerate mode replays its script once
per reachable measurement history so that protocol claims can be checked on
every branch rather than on samples.

A runtime instance is single-threaded; run independent instances in parallel
instead of sharing one.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

import numpy as np

from .gates import BELL_BASIS, bell_state
from .linalg import PureState

ALICE = "Alice"
BOB = "Bob"
PARTIES = (ALICE, BOB)

SAMPLE = "sample"
ENUMERATE = "enumerate"


class OwnershipError(Exception):
    """A party attempted an operation on qubits it does not own."""


@dataclass
class ResourceLedger:
    """Counts of consumed nonlocal resources, by kind and direction."""

    ebits_consumed: int = 0
    cbits_a_to_b: int = 0
    cbits_b_to_a: int = 0

    @property
    def total_cbits(self) -> int:
        return self.cbits_a_to_b + self.cbits_b_to_a

    def as_dict(self) -> dict:
        return {
            "ebits": self.ebits_consumed,
            "cbits_a_to_b": self.cbits_a_to_b,
            "cbits_b_to_a": self.cbits_b_to_a,
        }

    def copy(self) -> "ResourceLedger":
        return ResourceLedger(self.ebits_consumed, self.cbits_a_to_b, self.cbits_b_to_a)


@dataclass(frozen=True)
class Branch:
    """One fully resolved measurement history of a protocol script."""

    outcomes: tuple[tuple[str, int], ...]
    probability: float
    state: PureState

    def outcome_values(self) -> tuple[int, ...]:
        return tuple(value for _, value in self.outcomes)


class LoccRuntime:
    """Shared state of two parties plus the classical channel between them.

    ``mode`` is either ``"enumerate"`` (measurements fork every outcome when
    driven through :meth:`run_enumerated`; the default, used for exact
    verification) or ``"sample"`` (measurements draw one outcome from the
    seeded generator). ``trace``, when given a writable stream, receives one
    JSON line per operation with the ledger snapshot at that point.
    """

    def __init__(self, mode: str = ENUMERATE, seed=None, trace=None):
        if mode not in (SAMPLE, ENUMERATE):
            raise ValueError(f"mode must be {SAMPLE!r} or {ENUMERATE!r}, got {mode!r}")
        self.mode = mode
        self._rng = np.random.default_rng(seed)
        self._trace_sink = trace
        self.branches: list[Branch] = []
        self._reset()

    def _reset(self):
        self.state = PureState(np.ones(1), ())
        self.owned = {ALICE: set(), BOB: set()}
        self.ledger = ResourceLedger()
        self._inbox = {ALICE: deque(), BOB: deque()}
        self._pairs: list[tuple[str, str]] = []
        self._taken: list[int] = []
        self._forced: tuple[int, ...] = ()
        self._frontier = None
        self._record: list[tuple[str, int]] = []
        self._path_probability = 1.0
        self._measure_seq = 0

    # ------------------------------------------------------------------ helpers

    def owner_of(self, label: str) -> str:
        for party in PARTIES:
            if label in self.owned[party]:
                return party
        raise KeyError(f"unknown qubit label {label!r}")

    def _require_party(self, party):
        if party not in PARTIES:
            raise ValueError(f"unknown party {party!r}")

    def _require_owned(self, party, labels):
        self._require_party(party)
        missing = [lab for lab in labels if lab not in self.owned[party]]
        if missing:
            raise OwnershipError(f"{party} does not own {missing}")

    def _require_fresh(self, labels):
        clash = [lab for lab in labels if lab in self.owned[ALICE] or lab in self.owned[BOB]]
        if clash:
            raise ValueError(f"labels already in use: {clash}")

    def _emit(self, op, party, labels, **extra):
        if self._trace_sink is None:
            return
        record = {"op": op, "party": party, "labels": list(labels), "ledger": self.ledger.as_dict()}
        record.update(extra)
        self._trace_sink.write(json.dumps(record) + "\n")

    # --------------------------------------------------------------- preparation

    def add_register(self, party, labels, amplitudes):
        """Append fresh qubits prepared in a normalized joint state."""
        self._require_party(party)
        labels = tuple(labels)
        self._require_fresh(labels)
        register = PureState(amplitudes, labels)  # validates size and normalization
        self.state = self.state.tensor(register)
        self.owned[party].update(labels)
        self._emit("add_register", party, labels)

    def add_qubit(self, party, label, amplitudes):
        """Append one fresh qubit in the given normalized (a, b) state."""
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2:
            raise ValueError("a qubit needs exactly two amplitudes")
        self.add_register(party, (label,), amps)

    def distribute_bell_pair(self, label_at_alice, label_at_bob):
        """Share one maximally entangled pair across the cut; costs one ebit."""
        if label_at_alice == label_at_bob:
            raise ValueError("pair labels must differ")
        self._require_fresh((label_at_alice, label_at_bob))
        pair = PureState(bell_state(0), (label_at_alice, label_at_bob))
        self.state = self.state.tensor(pair)
        self.owned[ALICE].add(label_at_alice)
        self.owned[BOB].add(label_at_bob)
        self._pairs.append((label_at_alice, label_at_bob))
        self.ledger.ebits_consumed += 1
        self._emit("distribute_bell_pair", None, (label_at_alice, label_at_bob))

    def claim_bell_pair(self, receiver_half: str) -> str:
        """Consume the distributed pair ending at `receiver_half` and return
        the label of its other half."""
        for i, (at_alice, at_bob) in enumerate(self._pairs):
            if receiver_half == at_alice:
                del self._pairs[i]
                return at_bob
            if receiver_half == at_bob:
                del self._pairs[i]
                return at_alice
        raise ValueError(f"no distributed Bell pair ends at {receiver_half!r}")

    # ------------------------------------------------------------------ dynamics

    def apply_local(self, party, gate, targets):
        """Apply a unitary to qubits that `party` owns."""
        targets = tuple(targets)
        self._require_owned(party, targets)
        self.state = self.state.apply(gate, targets)
        self._emit("apply_local", party, targets)

    def apply_analysis_gate(self, gate, targets):
        """Whole-system unitary that ignores ownership.

        This is an analysis construction, not a protocol move: it bypasses the
        locality check and never touches the ledger. The trace record is
        flagged so runs using it are visibly non-local.
        """
        targets = tuple(targets)
        for lab in targets:
            self.owner_of(lab)  # labels must at least exist
        self.state = self.state.apply(gate, targets)
        self._emit("analysis_gate", None, targets)

    def measure_local(self, party, targets, basis: str = "computational") -> int:
        """Measure owned qubits; returns the outcome index taken on this path.

        Computational outcomes read the targets as bits, first target most
        significant. The measured qubits stay in the state, collapsed onto the
        observed basis vector.
        """
        targets = tuple(targets)
        self._require_owned(party, targets)
        if basis == "bell":
            if len(targets) != 2:
                raise ValueError("Bell measurement needs exactly two targets")
            basis_matrix = BELL_BASIS
        elif basis == "computational":
            basis_matrix = np.eye(2 ** len(targets), dtype=complex)
        else:
            raise ValueError(f"unknown measurement basis {basis!r}")
        mid = f"m{self._measure_seq}.{party}.{basis}.{'+'.join(targets)}"
        position = len(self._taken)
        if self.mode == ENUMERATE:
            if self._frontier is None:
                raise RuntimeError("enumerate-mode measurements must run via run_enumerated")
            if position < len(self._forced):
                outcome = self._forced[position]
                prob, post = self.state.collapse(targets, basis_matrix, outcome)
                if post is None:
                    raise ArithmeticError("a forced branch vanished; script is outcome-dependent")
            else:
                options = self.state.collapse_branches(targets, basis_matrix)
                outcome, prob, post = options[0]
                for alt_outcome, _, _ in options[1:]:
                    self._frontier.append(tuple(self._taken) + (alt_outcome,))
        else:
            options = self.state.collapse_branches(targets, basis_matrix)
            weights = np.array([p for _, p, _ in options])
            weights = weights / weights.sum()
            outcome, prob, post = options[int(self._rng.choice(len(options), p=weights))]
        self.state = post
        self._taken.append(int(outcome))
        self._record.append((mid, int(outcome)))
        self._path_probability *= prob
        self._measure_seq += 1
        self._emit("measure_local", party, targets, basis=basis, outcome=int(outcome))
        return int(outcome)

    # ----------------------------------------------------------------- messaging

    def send_classical(self, sender, receiver, bits: int, payload=None):
        """Deliver a payload and charge `bits` to the directional counter.

        A Bell-measurement result costs exactly 2 bits; other payloads must
        declare their own size.
        """
        self._require_party(sender)
        self._require_party(receiver)
        if sender == receiver:
            raise ValueError("sender and receiver must differ")
        if not isinstance(bits, (int, np.integer)) or bits < 0:
            raise ValueError(f"bit count must be a non-negative integer, got {bits!r}")
        if sender == ALICE:
            self.ledger.cbits_a_to_b += int(bits)
        else:
            self.ledger.cbits_b_to_a += int(bits)
        self._inbox[receiver].append(payload)
        self._emit("send_classical", sender, (), bits=int(bits))

    def receive_classical(self, party):
        self._require_party(party)
        if not self._inbox[party]:
            raise LookupError(f"{party} has no pending classical message")
        return self._inbox[party].popleft()

    # ------------------------------------------------------------------- drivers

    def run_enumerated(self, script) -> list[Branch]:
        """Execute ``script(self)`` once per reachable measurement history.

        The script must do all of its own preparation: the runtime is reset
        before every path. Branches come back sorted by outcome sequence and
        their probabilities sum to one. The ledger is counted once per script;
        if resource usage differs between outcomes an ArithmeticError is
        raised.
        """
        if self.mode != ENUMERATE:
            raise RuntimeError("runtime is not in enumerate mode")
        frontier: list[tuple[int, ...]] = [()]
        branches: list[Branch] = []
        ledgers: list[ResourceLedger] = []
        while frontier:
            prefix = frontier.pop()
            self._reset()
            self._forced = prefix
            self._frontier = frontier
            try:
                script(self)
            finally:
                self._frontier = None
            branches.append(Branch(tuple(self._record), self._path_probability, self.state))
            ledgers.append(self.ledger.copy())
        for other in ledgers[1:]:
            if other != ledgers[0]:
                raise ArithmeticError("ledger depends on measurement outcomes")
        self.ledger = ledgers[0]
        branches.sort(key=lambda b: b.outcome_values())
        total = sum(b.probability for b in branches)
        if abs(total - 1.0) > 1e-10:
            raise ArithmeticError(f"branch probabilities sum to {total!r}")
        self.branches = branches
        return branches

    def run_once(self, script) -> Branch:
        """Reset, execute ``script(self)`` sampling each measurement, and
        return the single observed trajectory."""
        if self.mode != SAMPLE:
            raise RuntimeError("runtime is not in sample mode")
        self._reset()
        script(self)
        branch = Branch(tuple(self._record), self._path_probability, self.state)
        self.branches = [branch]
        return branch
