"""Post-run analytics: two-qubit entanglement measures, randomness tests,
and agreement with the interferometer law cos²(φ/2)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qxemu.linalg import StateVector

SEPARABLE_TOL = 1e-8
MIN_STREAM_LENGTH = 100
P_VALUE_THRESHOLD = 0.01


def concurrence(state: StateVector) -> float:
    """Entanglement of a two-qubit pure state: 2|ad - bc| over (|00⟩,|01⟩,|10⟩,|11⟩).

    0 for product states, 1 for maximally entangled ones."""
    if state.n_qubits != 2:
        raise ValueError(f"concurrence needs a 2-qubit state, got {state.n_qubits}")
    a, b, c, d = state.amps
    return float(2.0 * abs(a * d - b * c))


def is_separable(state: StateVector, tol: float = SEPARABLE_TOL) -> bool:
    return concurrence(state) <= tol


@dataclass(frozen=True)
class TestReport:
    name: str
    statistic: float
    p_value: float
    passed: bool
    note: str = ""


def _check_stream(bits) -> np.ndarray:
    arr = np.asarray(bits, dtype=np.int64)
    if arr.size < MIN_STREAM_LENGTH:
        raise ValueError(f"bit stream too short: {arr.size} < {MIN_STREAM_LENGTH}")
    if not np.all((arr == 0) | (arr == 1)):
        raise ValueError("stream entries must be 0 or 1")
    return arr


def monobit_test(bits) -> TestReport:
    """NIST-style frequency test: |#ones - #zeros| / sqrt(n)."""
    arr = _check_stream(bits)
    n = arr.size
    s_obs = abs(int(np.sum(2 * arr - 1))) / math.sqrt(n)
    p_value = math.erfc(s_obs / math.sqrt(2))
    return TestReport("monobit", s_obs, p_value, p_value >= P_VALUE_THRESHOLD)


def runs_test(bits) -> TestReport:
    """NIST-style runs test: counts maximal runs of identical bits.

    If the ones-proportion precondition fails, the result reports failure
    with a note instead of raising."""
    arr = _check_stream(bits)
    n = arr.size
    pi = float(np.mean(arr))
    if abs(pi - 0.5) >= 2.0 / math.sqrt(n):
        return TestReport(
            "runs", float("nan"), 0.0, False, note="monobit precondition failed"
        )
    v_obs = 1 + int(np.sum(arr[1:] != arr[:-1]))
    num = abs(v_obs - 2.0 * n * pi * (1.0 - pi))
    den = 2.0 * math.sqrt(2.0 * n) * pi * (1.0 - pi)
    p_value = math.erfc(num / den)
    return TestReport("runs", float(v_obs), p_value, p_value >= P_VALUE_THRESHOLD)


@dataclass(frozen=True)
class SweepTable:
    """Phase-sweep results: (phi, empirical p0, shots) per row."""

    rows: tuple  # (phi, p0, shots)

    def __post_init__(self):
        rows = tuple((float(phi), float(p0), int(shots)) for phi, p0, shots in self.rows)
        for phi, p0, shots in rows:
            if not 0.0 <= p0 <= 1.0:
                raise ValueError(f"p0 {p0} not in [0,1]")
        object.__setattr__(self, "rows", rows)

    def to_csv(self) -> str:
        lines = ["phi,p0,shots"]
        lines += [f"{phi!r},{p0!r},{shots}" for phi, p0, shots in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "SweepTable":
        lines = [ln for ln in text.strip().splitlines() if ln]
        if not lines or lines[0].strip() != "phi,p0,shots":
            raise ValueError("expected header 'phi,p0,shots'")
        rows = []
        for ln in lines[1:]:
            phi, p0, shots = ln.split(",")
            rows.append((float(phi), float(p0), int(shots)))
        return cls(tuple(rows))


def mzi_agreement(table: SweepTable) -> dict:
    """Residuals of empirical p0 against cos²(φ/2), plus the max |residual|."""
    if not table.rows:
        raise ValueError("empty sweep table")
    per_row = [
        {"phi": phi, "p0": p0, "expected": math.cos(phi / 2) ** 2,
         "residual": p0 - math.cos(phi / 2) ** 2}
        for phi, p0, _ in table.rows
    ]
    return {
        "max_abs_residual": max(abs(r["residual"]) for r in per_row),
        "per_row": per_row,
    }
