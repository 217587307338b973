"""Circuit execution: exact statevector evolution, seeded shot sampling,
optional trajectory noise.

Draw-index layout (see qxemu.rng for the generator itself):
    0                      outcome draw (inverse CDF over basis probabilities)
    1 + 4*j + 2*k          depolarizing occurrence for op j, qubit slot k
    2 + 4*j + 2*k          Pauli choice for the same (op, slot)
    2**20 + c              readout flip for clbit c
Fixed indices per purpose keep the noiseless and noisy paths draw-compatible:
with all noise probabilities zero, sample_noisy reproduces sample exactly.
"""
from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from qxemu import rng
from qxemu.circuit import Circuit, bitstring_of, validate
from qxemu.gates import GateSpec, matrix_of
from qxemu.linalg import StateVector, apply_1q, apply_2q, probabilities
from qxemu.topology import BackendTopology, builtin

MAX_SHOTS = 1_000_000

_OUTCOME_DRAW = 0
_READOUT_BASE = 1 << 20

_PAULIS = tuple(matrix_of(GateSpec(name)) for name in ("x", "y", "z"))


class ValidationFailure(ValueError):
    """Raised when a circuit does not validate against the run's backend."""

    def __init__(self, report):
        lines = "; ".join(v.message for v in report.violations)
        super().__init__(f"circuit fails backend validation: {lines}")
        self.report = report


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing probability per gate name plus a readout flip probability."""

    gate_depolarizing: dict = field(default_factory=dict)
    readout_flip: float = 0.0

    def __post_init__(self):
        for name, p in self.gate_depolarizing.items():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"depolarizing probability for {name} not in [0,1]")
        if not 0.0 <= self.readout_flip <= 1.0:
            raise ValueError("readout flip probability not in [0,1]")

    @classmethod
    def preset(cls) -> "NoiseModel":
        """Invented "realistic" defaults: 0.005 per 1q gate, 0.02 for cx, 1% readout."""
        probs = {
            name: 0.005
            for name in ("id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "u1", "u2", "u3")
        }
        probs["cx"] = 0.02
        return cls(probs, 0.01)


@dataclass(frozen=True)
class RunConfig:
    shots: int = 1024
    seed: int = 0
    backend: BackendTopology = field(default_factory=lambda: builtin("custom"))
    noise: NoiseModel | None = None

    def __post_init__(self):
        if not 1 <= self.shots <= MAX_SHOTS:
            raise ValueError(f"shots must be in 1..{MAX_SHOTS}")


@dataclass(frozen=True)
class Histogram:
    counts: dict
    shots: int
    seed: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts must sum to shots")
        widths = {len(k) for k in self.counts}
        if len(widths) > 1:
            raise ValueError("histogram keys must share one width")

    def to_dict(self) -> dict:
        return {
            "shots": self.shots,
            "seed": self.seed,
            "counts": {k: self.counts[k] for k in sorted(self.counts)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def statevector(circuit: Circuit) -> StateVector:
    """Exact state after applying the circuit's gates to |0...0⟩.

    Measurements are ignored at this level; coupling constraints are not
    checked (math-level run)."""
    state = StateVector.zero(circuit.n_qubits)
    for op in circuit.ops:
        state = _apply_op(state, op)
    return state


def _apply_op(state: StateVector, op) -> StateVector:
    m = matrix_of(op.spec)
    if op.spec.arity == 1:
        return apply_1q(state, m, op.qubits[0])
    return apply_2q(state, m, op.qubits[0], op.qubits[1])


def _check_backend(circuit: Circuit, cfg: RunConfig) -> None:
    report = validate(circuit, cfg.backend)
    if not report.ok:
        raise ValidationFailure(report)


def _outcomes_noiseless(circuit: Circuit, seed: int, lo: int, hi: int) -> list:
    probs = probabilities(statevector(circuit))
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    u = rng.uniforms(seed, np.arange(lo, hi, dtype=np.uint64), _OUTCOME_DRAW)
    idx = np.minimum(np.searchsorted(cdf, u, side="right"), len(probs) - 1)
    return [bitstring_of(int(k), circuit) for k in idx]


def _one_noisy_shot(circuit: Circuit, noise: NoiseModel, seed: int, shot: int) -> str:
    state = StateVector.zero(circuit.n_qubits)
    for j, op in enumerate(circuit.ops):
        state = _apply_op(state, op)
        p = noise.gate_depolarizing.get(op.spec.name, 0.0)
        if p > 0.0:
            for k, q in enumerate(op.qubits):
                if rng.uniform(seed, shot, 1 + 4 * j + 2 * k) < p:
                    choice = min(2, int(rng.uniform(seed, shot, 2 + 4 * j + 2 * k) * 3))
                    state = apply_1q(state, _PAULIS[choice], q)
    probs = probabilities(state)
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    u = rng.uniform(seed, shot, _OUTCOME_DRAW)
    outcome = min(int(np.searchsorted(cdf, u, side="right")), len(probs) - 1)
    r = noise.readout_flip
    if r > 0.0:
        for q, c in circuit.measurements:
            if rng.uniform(seed, shot, _READOUT_BASE + c) < r:
                outcome ^= 1 << q
    return bitstring_of(outcome, circuit)


def shot_outcomes(circuit: Circuit, cfg: RunConfig, lo: int = 0, hi: int | None = None) -> list:
    """Per-shot bitstrings for shot indices [lo, hi); pure in (circuit, cfg)."""
    if hi is None:
        hi = cfg.shots
    _check_backend(circuit, cfg)
    if cfg.noise is None:
        return _outcomes_noiseless(circuit, cfg.seed, lo, hi)
    return [
        _one_noisy_shot(circuit, cfg.noise, cfg.seed, shot) for shot in range(lo, hi)
    ]


def _histogram_from_outcomes(outcomes, cfg: RunConfig) -> Histogram:
    return Histogram(dict(Counter(outcomes)), cfg.shots, cfg.seed)


def sample(circuit: Circuit, cfg: RunConfig, workers: int = 1) -> Histogram:
    """Sample cfg.shots measurement outcomes.

    Each shot's randomness is a pure function of (seed, shot index), so the
    histogram is identical for any workers value; merging is a plain counter
    sum over disjoint shot ranges."""
    _check_backend(circuit, cfg)
    if workers <= 1:
        return _histogram_from_outcomes(shot_outcomes(circuit, cfg), cfg)
    bounds = np.linspace(0, cfg.shots, workers + 1, dtype=int)
    counts: Counter = Counter()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(shot_outcomes, circuit, cfg, int(lo), int(hi))
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo
        ]
        for fut in futures:
            counts.update(fut.result())
    return Histogram(dict(counts), cfg.shots, cfg.seed)


def sample_noisy(circuit: Circuit, cfg: RunConfig, workers: int = 1) -> Histogram:
    """sample() with a noise model required; provided for call-site clarity."""
    if cfg.noise is None:
        raise ValueError("sample_noisy requires cfg.noise")
    return sample(circuit, cfg, workers)
