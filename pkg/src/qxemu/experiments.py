"""Scripted reproductions of the three classroom experiments.

Experiment 1: measure an equal superposition (quantum coin / RNG).
Experiment 2: Mach-Zehnder phase sweep, h - u1(φ) - h on one qubit. Two
consecutive Hadamards model both beam splitters; no mirror element is
needed because the mirrors contribute only a global phase.
Experiment 3: Bell-state preparation (h or u3 plus cx).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from qxemu.analysis import SweepTable, concurrence, mzi_agreement, monobit_test
from qxemu.circuit import Circuit
from qxemu.engine import NoiseModel, RunConfig, Histogram, sample, shot_outcomes, statevector
from qxemu.linalg import probabilities
from qxemu.topology import BackendTopology, builtin

DEFAULT_SWEEP_POINTS = 13  # 0 to 2π in steps of π/6
EXP3_VARIANTS = ("psi_plus", "phi_plus", "u3_theta")


def phase_from_plate(n: float, t: float, lam: float, reduce: bool = False) -> float:
    """Phase shift 2π(n-1)t/λ of a transparent plate, optionally mod 2π."""
    if n < 1.0:
        raise ValueError("refractive index must be >= 1")
    if t <= 0.0 or lam <= 0.0:
        raise ValueError("thickness and wavelength must be positive")
    phi = 2.0 * math.pi * (n - 1.0) * t / lam
    return phi % (2.0 * math.pi) if reduce else phi


@dataclass(frozen=True)
class ExperimentReport:
    id: str
    inputs: dict
    results: dict
    verdict: bool

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "inputs": self.inputs,
            "results": self.results,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _three_sigma(shots: int) -> float:
    return 3.0 * math.sqrt(0.25 / shots)


def run_exp1(
    shots: int = 8192,
    seed: int = 0,
    backend: BackendTopology | None = None,
    n_bits: int = 10_000,
) -> ExperimentReport:
    """Measure h|0⟩ repeatedly; also emit a bitstream of single-shot runs."""
    backend = backend or builtin("custom")
    circuit = Circuit.empty(backend.n_qubits, 1).h(0).measure(0, 0)
    cfg = RunConfig(shots=shots, seed=seed, backend=backend)
    hist = sample(circuit, cfg)
    one_key = "0" * (len(next(iter(hist.counts))) - 1) + "1"
    p_one = hist.counts.get(one_key, 0) / shots
    bit_cfg = RunConfig(shots=max(n_bits, 1), seed=seed, backend=backend)
    bits = [int(s[-1]) for s in shot_outcomes(circuit, bit_cfg, 0, n_bits)]
    monobit = monobit_test(bits) if n_bits >= 100 else None
    if shots == 1:
        verdict = sum(hist.counts.values()) == 1
    else:
        verdict = abs(p_one - 0.5) <= _three_sigma(shots)
    results = {
        "histogram": hist.to_dict(),
        "p_one": p_one,
        "deviation_from_half": abs(p_one - 0.5),
        "tolerance": _three_sigma(shots) if shots > 1 else None,
        "bits": bits,
        "monobit": None
        if monobit is None
        else {"statistic": monobit.statistic, "p_value": monobit.p_value, "passed": monobit.passed},
    }
    return ExperimentReport(
        "exp1",
        {"shots": shots, "seed": seed, "backend": backend.name, "n_bits": n_bits},
        results,
        verdict,
    )


def run_exp2(
    phis=None,
    shots: int = 8192,
    seed: int = 0,
    backend: BackendTopology | None = None,
) -> ExperimentReport:
    """Phase sweep of the interferometer circuit h - u1(φ) - h."""
    backend = backend or builtin("custom")
    if phis is None:
        phis = np.linspace(0.0, 2.0 * math.pi, DEFAULT_SWEEP_POINTS)
    phis = [float(p) for p in phis]
    if not phis:
        raise ValueError("phis must be nonempty")
    rows = []
    exact = []
    for i, phi in enumerate(phis):
        circuit = (
            Circuit.empty(backend.n_qubits, 1).h(0).u1(phi, 0).h(0).measure(0, 0)
        )
        probs = probabilities(statevector(circuit))
        p0_exact = float(sum(probs[k] for k in range(len(probs)) if not k & 1))
        cfg = RunConfig(shots=shots, seed=seed + i, backend=backend)
        hist = sample(circuit, cfg)
        zero_key = "0" * len(next(iter(hist.counts)))
        p0 = hist.counts.get(zero_key, 0) / shots
        rows.append((phi, p0, shots))
        exact.append({"phi": phi, "p0_exact": p0_exact})
    table = SweepTable(tuple(rows))
    agreement = mzi_agreement(table)
    tolerance = _three_sigma(shots)
    results = {
        "table": [{"phi": phi, "p0": p0, "shots": s} for phi, p0, s in table.rows],
        "exact": exact,
        "agreement": agreement,
        "tolerance": tolerance,
    }
    return ExperimentReport(
        "exp2",
        {"phis": phis, "shots": shots, "seed": seed, "backend": backend.name},
        results,
        agreement["max_abs_residual"] <= tolerance,
    )


def _exp3_circuit(
    variant: str, theta: float, n_qubits: int, qubits=(0, 1)
) -> Circuit:
    target, control = qubits
    c = Circuit.empty(n_qubits, 2)
    if variant == "phi_plus":
        c = c.x(target)
    if variant == "u3_theta":
        c = c.u3(theta, 0.0, 0.0, control)
    else:
        c = c.h(control)
    return c.cx(control, target).measure(target, 0).measure(control, 1)


def run_exp3(
    variant: str = "psi_plus",
    theta: float = 0.0,
    shots: int = 8192,
    seed: int = 0,
    backend: BackendTopology | None = None,
    noise: NoiseModel | None = None,
    qubits=(0, 1),
) -> ExperimentReport:
    """Prepare a (possibly non-maximally) entangled pair and sample it."""
    if variant not in EXP3_VARIANTS:
        raise ValueError(f"variant must be one of {EXP3_VARIANTS}")
    backend = backend or builtin("custom")
    circuit = _exp3_circuit(variant, theta, backend.n_qubits, qubits)
    # same preparation on exactly two qubits, for the entanglement analysis
    pair = _exp3_circuit(variant, theta, 2, (0, 1))
    pair_state = statevector(Circuit(2, 0, pair.ops, ()))
    conc = concurrence(pair_state)
    cfg = RunConfig(shots=shots, seed=seed, backend=backend, noise=noise)
    hist = sample(circuit, cfg)
    equal_bits = sum(
        cnt for key, cnt in hist.counts.items() if key[-1] == key[-2]
    ) / shots
    results = {
        "statevector_amps": [[z.real, z.imag] for z in pair_state.amps],
        "concurrence": conc,
        "histogram": hist.to_dict(),
        "equal_bit_fraction": equal_bits,
    }
    if variant == "psi_plus":
        verdict = abs(conc - 1.0) <= 1e-10 and (
            noise is not None or equal_bits == 1.0
        )
    elif variant == "phi_plus":
        verdict = abs(conc - 1.0) <= 1e-10 and (
            noise is not None or equal_bits == 0.0
        )
    else:
        verdict = abs(conc - abs(math.sin(theta))) <= 1e-10
    return ExperimentReport(
        "exp3",
        {
            "variant": variant,
            "theta": theta,
            "shots": shots,
            "seed": seed,
            "backend": backend.name,
            "noise": "preset" if noise is not None else "off",
            "qubits": list(qubits),
        },
        results,
        verdict,
    )
