"""Checks of measured resources and entropies against the protocol bounds:
a universal remote gate needs at least two shared pairs and two forward
classical bits, and the two-teleport scheme's totals of four bits plus two
pairs are an upper bound on what any scheme should spend."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .linalg import PureState, von_neumann_entropy

#: Minimum shared pairs any universal remote-gate protocol must consume.
EBITS_LOWER = 2
#: Minimum classical bits toward the remote qubit's owner.
CBITS_FORWARD_LOWER = 2
#: Totals spent by the two-teleport scheme; nothing should need more.
CBITS_TOTAL_UPPER = 4
EBITS_UPPER = 2


@dataclass(frozen=True)
class BoundCheck:
    """One comparison of a measured quantity against a bound."""

    name: str
    measured: float
    bound: float
    direction: str  # ">=", "<=", or "=="
    tolerance: float
    passed: bool

    @classmethod
    def compare(cls, name, measured, bound, direction, tolerance: float = 1e-9):
        measured = float(measured)
        bound = float(bound)
        if direction == ">=":
            ok = measured >= bound - tolerance
        elif direction == "<=":
            ok = measured <= bound + tolerance
        elif direction == "==":
            ok = abs(measured - bound) <= tolerance
        else:
            raise ValueError(f"unknown direction {direction!r}")
        return cls(name, measured, bound, direction, float(tolerance), bool(ok))

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "measured": self.measured,
            "bound": self.bound,
            "passed": self.passed,
        }


def check_lower_bounds(ledger) -> list[BoundCheck]:
    """Ledger checks that every universal remote-gate run must satisfy.

    Ledger counters are integers, so the comparisons are exact.
    """
    return [
        BoundCheck.compare("ebits_lower", ledger.ebits_consumed, EBITS_LOWER, ">=", 0.0),
        BoundCheck.compare("cbits_a_to_b_lower", ledger.cbits_a_to_b, CBITS_FORWARD_LOWER, ">=", 0.0),
    ]


def check_upper_bound(ledger) -> list[BoundCheck]:
    """Totals must not exceed what the two-teleport scheme spends."""
    return [
        BoundCheck.compare("cbits_total_upper", ledger.total_cbits, CBITS_TOTAL_UPPER, "<=", 0.0),
        BoundCheck.compare("ebits_upper", ledger.ebits_consumed, EBITS_UPPER, "<=", 0.0),
    ]


def bipartite_entanglement(state: PureState, cut: Iterable[str]) -> float:
    """Entanglement across the given cut of a pure state, in ebits.

    `cut` lists the labels on one side. The reduced-state entropies of the
    two sides must agree within 1e-9, otherwise ArithmeticError is raised.
    """
    cut = tuple(cut)
    state.positions(cut)  # validates the labels
    other = tuple(lab for lab in state.labels if lab not in cut)
    s_cut = von_neumann_entropy(state.reduced_density(cut).matrix)
    s_other = von_neumann_entropy(state.reduced_density(other).matrix)
    if abs(s_cut - s_other) > 1e-9:
        raise ArithmeticError(
            f"entanglement entropy asymmetry: {s_cut!r} vs {s_other!r}"
        )
    return float(s_cut)
