"""Scenario runner: every protocol and witness as a subcommand with a
deterministic seed and a machine-readable report.

Exit codes: 0 when every bound check passed and the minimum fidelity clears
``1 - tolerance``, 1 when a check failed, 2 on bad arguments, 3 when the
report cannot be written. The ``QRC_SEED`` environment variable overrides
``--seed`` when set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .bounds import BoundCheck
from .gates import (HADAMARD, haar_state, haar_unitary, pauli_decompose,
                    pauli_reconstruct, u_psi_for)
from .protocols import (ProtocolReport, ancilla_independence_check,
                        bidirectional_u_teleport, control_orthogonality_witness,
                        control_state_teleport, dense_coding_bound_demo,
                        entanglement_bound_demo, g1_state_transfer_check,
                        pauli_control_encoding, teleport_state,
                        trivial_g1_nogo_check)
from .runtime import ALICE, ENUMERATE, LoccRuntime, ResourceLedger

MAX_TRIALS = 10 ** 6


@dataclass
class RunConfig:
    subcommand: str
    seed: int
    trials: int
    tolerance: float
    output_format: str
    output_path: str | None
    verbose: bool


def _trials_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"trials must be an integer, got {text!r}")
    if not 1 <= value <= MAX_TRIALS:
        raise argparse.ArgumentTypeError(f"trials must be in 1..{MAX_TRIALS}")
    return value


def _tolerance_arg(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance must be a number, got {text!r}")
    if not value > 0.0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


_HELP = {
    "teleport-state": "teleport random states and check exact transfer on every branch",
    "teleport-unitary": "apply random gates remotely via the two-teleport scheme",
    "control-teleport": "ship the control register instead; one-way classical traffic",
    "dense-coding": "decode two classical bits from one remote Pauli application",
    "ebit-bound": "entanglement left across the cut by the coherently controlled run",
    "nogo-trivial-g1": "overlap deficit when the pull stage is skipped",
    "g1-transfer": "the pull stage forces the input state onto the near side",
    "independence": "ancilla leftovers carry no trace of the gate or the input",
    "orthogonality-witness": "spread of gate expectation values over sampled states",
    "decompose": "Pauli-basis round trip for random gates",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="remotegate",
        description="Run remote-gate protocols and bound checks, emitting a report.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="random seed (QRC_SEED overrides when set)")
    common.add_argument("--trials", type=_trials_arg, default=100,
                        help="number of randomized trials (default 100)")
    common.add_argument("--tolerance", type=_tolerance_arg, default=1e-9,
                        help="pass/fail tolerance (default 1e-9)")
    common.add_argument("--format", dest="output_format", choices=("json", "csv"),
                        default="json", help="report format (default json)")
    common.add_argument("--output", dest="output_path", default=None,
                        help="write the report to this path instead of stdout")
    common.add_argument("--verbose", action="store_true",
                        help="emit a per-operation trace on stderr")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name, help_text in _HELP.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def _trace(cfg: RunConfig):
    return sys.stderr if cfg.verbose else None


def _same_ledger(seen: ResourceLedger | None, new: ResourceLedger) -> ResourceLedger:
    if seen is not None and seen != new:
        raise ArithmeticError(f"ledger changed across trials: {seen} vs {new}")
    return new


def _run_teleport_state(cfg: RunConfig) -> ProtocolReport:
    rng = np.random.default_rng(cfg.seed)
    fidelity = 1.0
    branch_total = 0
    ledger = None
    for _ in range(cfg.trials):
        psi = haar_state(rng)
        rt = LoccRuntime(mode=ENUMERATE, trace=_trace(cfg))

        def script(r, psi=psi):
            r.add_qubit(ALICE, "source", psi)
            r.distribute_bell_pair("ancilla", "target")
            teleport_state(r, "source", "target")

        branches = rt.run_enumerated(script)
        for b in branches:
            fidelity = min(fidelity, b.state.reduced_density(("target",)).fidelity_with_pure(psi))
        branch_total += len(branches)
        ledger = _same_ledger(ledger, rt.ledger)
    checks = (
        BoundCheck.compare("ebits_exact", ledger.ebits_consumed, 1, "==", 0.0),
        BoundCheck.compare("cbits_a_to_b_exact", ledger.cbits_a_to_b, 2, "==", 0.0),
        BoundCheck.compare("cbits_b_to_a_exact", ledger.cbits_b_to_a, 0, "==", 0.0),
    )
    return ProtocolReport("teleport-state", ledger, fidelity, {}, checks, branch_total)


def _run_teleport_unitary(cfg: RunConfig) -> ProtocolReport:
    rng = np.random.default_rng(cfg.seed)
    fidelity = 1.0
    leftover = 0.0
    branch_total = 0
    ledger = None
    checks = ()
    for _ in range(cfg.trials):
        gate = haar_unitary(rng)
        psi = haar_state(rng)
        rt = LoccRuntime(mode=ENUMERATE, trace=_trace(cfg))
        report = bidirectional_u_teleport(rt, gate, psi)
        fidelity = min(fidelity, report.fidelity)
        leftover = max(leftover, report.entropies["final_cut_entanglement_max"])
        branch_total += report.branches
        ledger = _same_ledger(ledger, rt.ledger)
        checks = report.bound_checks
    entropies = {"final_cut_entanglement_max": leftover}
    return ProtocolReport("teleport-unitary", ledger, fidelity, entropies, checks, branch_total)


def _run_control_teleport(cfg: RunConfig) -> ProtocolReport:
    rng = np.random.default_rng(cfg.seed)
    encoding = pauli_control_encoding()
    fidelity = 1.0
    branch_total = 0
    ledger = None
    checks = ()
    for trial in range(cfg.trials):
        psi = haar_state(rng)
        rt = LoccRuntime(mode=ENUMERATE, trace=_trace(cfg))
        report = control_state_teleport(rt, encoding, trial % encoding.n_active, psi)
        fidelity = min(fidelity, report.fidelity)
        branch_total += report.branches
        ledger = _same_ledger(ledger, rt.ledger)
        checks = report.bound_checks
    return ProtocolReport("control-teleport", ledger, fidelity, {}, checks, branch_total)


def _run_dense_coding(cfg: RunConfig) -> ProtocolReport:
    correct = 0
    branch_total = 0
    ledger = None
    from .bounds import check_lower_bounds, check_upper_bound
    for mu in range(4):
        rt = LoccRuntime(mode=ENUMERATE, trace=_trace(cfg))
        decoded = dense_coding_bound_demo(rt, mu)
        if decoded == mu:
            correct += 1
        branch_total += len(rt.branches)
        ledger = _same_ledger(ledger, rt.ledger)
    checks = tuple(
        [BoundCheck.compare("decoded_all_four", correct, 4, "==", 0.0)]
        + check_lower_bounds(ledger)
        + check_upper_bound(ledger)
    )
    return ProtocolReport("dense-coding", ledger, None, {}, checks, branch_total)


def _run_ebit_bound(cfg: RunConfig) -> ProtocolReport:
    rt = LoccRuntime(mode=ENUMERATE, trace=_trace(cfg))
    e_min, per_branch = entanglement_bound_demo(rt)
    e_max = max(p.entropy for p in per_branch)
    gap_max = max(p.identity_gap for p in per_branch)
    component_max = max(max(p.component_entropies) for p in per_branch)
    checks = (
        BoundCheck.compare("branch_entropy_lower", e_min, 2.0, ">=", cfg.tolerance),
        BoundCheck.compare("branch_entropy_exact", e_max, 2.0, "==", cfg.tolerance),
        BoundCheck.compare("identity_gap_max", gap_max, 0.0, "<=", cfg.tolerance),
    )
    entropies = {
        "branch_entropy_min": e_min,
        "branch_entropy_max": e_max,
        "component_entropy_max": component_max,
    }
    return ProtocolReport("ebit-bound", rt.ledger, None, entropies, checks, len(per_branch))


def _run_nogo_trivial_g1(cfg: RunConfig) -> ProtocolReport:
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(cfg.trials):
        psi = haar_state(rng)
        psi_prime = u_psi_for(psi).conj().T[:, 1]
        chi = haar_state(rng, dim=8)
        gate = haar_unitary(rng)
        deficit = trivial_g1_nogo_check(chi, psi, psi_prime, gate)
        worst = max(worst, abs(deficit - 1.0))
    checks = (BoundCheck.compare("deficit_error_max", worst, 0.0, "<=", cfg.tolerance),)
    return ProtocolReport("nogo-trivial-g1", ResourceLedger(), None, {}, checks, 0)


def _run_g1_transfer(cfg: RunConfig) -> ProtocolReport:
    rng = np.random.default_rng(cfg.seed)
    purity_min = 1.0
    fidelity_min = 1.0
    branch_total = 0
    ledger = None
    for _ in range(cfg.trials):
        rt = LoccRuntime(mode=ENUMERATE, trace=_trace(cfg))
        purity, fidelity = g1_state_transfer_check(haar_state(rng), rt)
        purity_min = min(purity_min, purity)
        fidelity_min = min(fidelity_min, fidelity)
        branch_total += len(rt.branches)
        ledger = _same_ledger(ledger, rt.ledger)
    checks = (
        BoundCheck.compare("alpha_purity_min", purity_min, 1.0, ">=", cfg.tolerance),
        BoundCheck.compare("alpha_fidelity_min", fidelity_min, 1.0, ">=", cfg.tolerance),
    )
    return ProtocolReport("g1-transfer", ledger, fidelity_min, {}, checks, branch_total)


def _run_independence(cfg: RunConfig) -> ProtocolReport:
    rng = np.random.default_rng(cfg.seed)
    side = max(2, isqrt(cfg.trials))
    u_set = [haar_unitary(rng) for _ in range(side)]
    psi_set = [haar_state(rng) for _ in range(side)]
    deviation = ancilla_independence_check(u_set, psi_set, trace=_trace(cfg))
    probe = LoccRuntime(mode=ENUMERATE)
    probe_report = bidirectional_u_teleport(probe, u_set[0], psi_set[0])
    checks = tuple(
        [BoundCheck.compare("ancilla_deviation_max", deviation, 0.0, "<=", cfg.tolerance)]
        + list(probe_report.bound_checks)
    )
    entropies = {"ancilla_deviation_max": deviation}
    return ProtocolReport("independence", probe.ledger, None, entropies, checks,
                          probe_report.branches * side * side)


def _run_orthogonality_witness(cfg: RunConfig) -> ProtocolReport:
    rng = np.random.default_rng(cfg.seed)
    nonprop_min = np.inf
    prop_max = 0.0
    flags_ok = 0
    for _ in range(cfg.trials):
        u = haar_unitary(rng)
        u_other = haar_unitary(rng)
        spread, proportional = control_orthogonality_witness(u, u_other, 100, rng)
        if not proportional:
            nonprop_min = min(nonprop_min, spread)
        phase = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        spread_p, proportional_p = control_orthogonality_witness(u, phase * u, 100, rng)
        prop_max = max(prop_max, spread_p)
        if proportional_p and not proportional:
            flags_ok += 1
    checks = (
        BoundCheck.compare("nonproportional_spread_min", nonprop_min, 1e-3, ">=", 0.0),
        BoundCheck.compare("proportional_spread_max", prop_max, 1e-10, "<=", 0.0),
        BoundCheck.compare("proportional_flags_correct", flags_ok, cfg.trials, "==", 0.0),
    )
    return ProtocolReport("orthogonality-witness", ResourceLedger(), None, {}, checks, 0)


def _run_decompose(cfg: RunConfig) -> ProtocolReport:
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(cfg.trials):
        gate = haar_unitary(rng)
        alpha = pauli_decompose(gate)
        worst = max(worst, float(np.abs(pauli_reconstruct(alpha) - gate).max()))
    alpha_h = pauli_decompose(HADAMARD)
    expected_h = np.array([0.0, 1.0 / np.sqrt(2.0), 0.0, 1.0 / np.sqrt(2.0)])
    hadamard_err = float(np.abs(alpha_h - expected_h).max())
    checks = (
        BoundCheck.compare("reconstruction_error_max", worst, 1e-11, "<=", 0.0),
        BoundCheck.compare("hadamard_coefficient_error", hadamard_err, 1e-12, "<=", 0.0),
    )
    return ProtocolReport("decompose", ResourceLedger(), None, {}, checks, 0)


_RUNNERS = {
    "teleport-state": _run_teleport_state,
    "teleport-unitary": _run_teleport_unitary,
    "control-teleport": _run_control_teleport,
    "dense-coding": _run_dense_coding,
    "ebit-bound": _run_ebit_bound,
    "nogo-trivial-g1": _run_nogo_trivial_g1,
    "g1-transfer": _run_g1_transfer,
    "independence": _run_independence,
    "orthogonality-witness": _run_orthogonality_witness,
    "decompose": _run_decompose,
}


def _report_passed(report: ProtocolReport, cfg: RunConfig) -> bool:
    fidelity_ok = report.fidelity is None or report.fidelity >= 1.0 - cfg.tolerance
    return report.all_passed and fidelity_ok


def _csv_text(report: ProtocolReport, cfg: RunConfig) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["kind", "name", "measured", "bound", "direction", "passed"])
    for check in report.bound_checks:
        writer.writerow(["check", check.name, check.measured, check.bound,
                         check.direction, check.passed])
    fidelity = "" if report.fidelity is None else report.fidelity
    writer.writerow(["summary", report.name, fidelity, "", "", _report_passed(report, cfg)])
    return buf.getvalue()


def write_report(report: ProtocolReport, cfg: RunConfig, elapsed_ms: float = 0.0) -> None:
    """Serialize the report with stable field ordering and write it out."""
    if cfg.output_format == "json":
        payload = {
            "name": report.name,
            "seed": cfg.seed,
            "trials": cfg.trials,
            "ledger": report.ledger.as_dict(),
            "fidelity_min": report.fidelity,
            "entropies": dict(report.entropies),
            "bound_checks": [c.as_dict() for c in report.bound_checks],
            "elapsed_ms": elapsed_ms,
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = _csv_text(report, cfg)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    seed = ns.seed
    env_seed = os.environ.get("QRC_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            print(f"error: QRC_SEED must be an integer, got {env_seed!r}", file=sys.stderr)
            return 2
    cfg = RunConfig(ns.subcommand, seed, ns.trials, ns.tolerance,
                    ns.output_format, ns.output_path, ns.verbose)
    start = time.perf_counter()
    report = _RUNNERS[cfg.subcommand](cfg)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    try:
        write_report(report, cfg, elapsed_ms)
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return 3
    return 0 if _report_passed(report, cfg) else 1


def entry() -> None:
    raise SystemExit(main())
