"""Dense complex statevectors and small-unitary application kernels.

Amplitude ordering: basis index k assigns bit i (value 2**i) to qubit i,
so qubit 0 is the least significant bit and bitstrings print right-to-left
with q[0] rightmost.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

STATE_TOL = 1e-10
UNITARY_TOL = 1e-12
# Norm drift beyond this after a single gate application signals a bug.
_DRIFT_BUG = 1e-6

MAX_QUBITS = 16


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state over 2**n_qubits computational basis states."""

    n_qubits: int
    amps: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in 1..{MAX_QUBITS}, got {self.n_qubits}")
        amps = np.asarray(self.amps, dtype=np.complex128)
        if amps.shape != (2**self.n_qubits,):
            raise ValueError(
                f"expected {2**self.n_qubits} amplitudes, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps.view(np.float64))):
            raise ValueError("amplitudes must be finite")
        norm = float(np.sqrt(np.sum(np.abs(amps) ** 2)))
        if abs(norm - 1.0) > STATE_TOL:
            raise ValueError(f"state is not normalized: |amps| = {norm}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        amps = np.zeros(2**n_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def from_amplitudes(cls, amps) -> "StateVector":
        amps = np.asarray(amps, dtype=np.complex128)
        n = int(amps.shape[0]).bit_length() - 1
        return cls(n, amps)


def _wrap(n_qubits: int, amps: np.ndarray) -> StateVector:
    """Build a StateVector from raw amplitudes, renormalizing small drift."""
    norm = float(np.sqrt(np.sum(np.abs(amps) ** 2)))
    drift = abs(norm - 1.0)
    if drift > _DRIFT_BUG:
        warnings.warn(
            f"norm drift {drift:.3e} after gate application; this signals a bug",
            RuntimeWarning,
            stacklevel=3,
        )
    if drift > STATE_TOL:
        amps = amps / norm
    return StateVector(n_qubits, amps)


def is_unitary(u, tol: float = UNITARY_TOL) -> bool:
    """True iff max-entry |U†U - I| <= tol."""
    m = np.asarray(u, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    gram = m.conj().T @ m
    return float(np.max(np.abs(gram - np.eye(m.shape[0])))) <= tol


def _check_unitary(u, dim: int) -> np.ndarray:
    m = np.asarray(u, dtype=np.complex128)
    if m.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("matrix entries must be finite")
    if not is_unitary(m):
        raise ValueError("matrix is not unitary")
    return m


def apply_1q(state: StateVector, u, target: int) -> StateVector:
    """Left-multiply the target qubit's amplitude pairs by the 2x2 unitary u."""
    n = state.n_qubits
    if not 0 <= target < n:
        raise IndexError(f"target {target} out of range for {n} qubits")
    m = _check_unitary(u, 2)
    # reshape puts qubit q on axis n-1-q (axis 0 is the most significant bit)
    t = state.amps.reshape([2] * n)
    ax = n - 1 - target
    t = np.moveaxis(t, ax, 0)
    t = np.tensordot(m, t, axes=([1], [0]))
    t = np.moveaxis(t, 0, ax)
    return _wrap(n, t.reshape(-1))


def apply_2q(state: StateVector, u, control: int, target: int) -> StateVector:
    """Apply the 4x4 unitary u on the ordered (control, target) subspace.

    The 4-dimensional subspace is ordered |ct⟩ = |00⟩, |01⟩, |10⟩, |11⟩ with
    the control bit first, matching the CNOT matrix convention.
    """
    n = state.n_qubits
    if control == target:
        raise ValueError("control and target must differ")
    for q in (control, target):
        if not 0 <= q < n:
            raise IndexError(f"qubit {q} out of range for {n} qubits")
    m = _check_unitary(u, 4)
    t = state.amps.reshape([2] * n)
    ax_c, ax_t = n - 1 - control, n - 1 - target
    t = np.moveaxis(t, (ax_c, ax_t), (0, 1))
    rest = t.shape[2:]
    t = m @ t.reshape(4, -1)
    t = t.reshape((2, 2) + rest)
    t = np.moveaxis(t, (0, 1), (ax_c, ax_t))
    return _wrap(n, t.reshape(-1))


def probabilities(state: StateVector) -> np.ndarray:
    """Measurement probabilities |amps[k]|² over the computational basis."""
    return np.abs(state.amps) ** 2


def equal_up_to_global_phase(a: StateVector, b: StateVector, tol: float = STATE_TOL) -> bool:
    """True iff a = c·b entrywise within tol for some unit-modulus scalar c."""
    if a.n_qubits != b.n_qubits:
        raise ValueError(
            f"dimension mismatch: {a.n_qubits} vs {b.n_qubits} qubits"
        )
    k = int(np.argmax(np.abs(b.amps)))
    c = a.amps[k] / b.amps[k]
    if abs(abs(c) - 1.0) > tol:
        return False
    return float(np.max(np.abs(a.amps - c * b.amps))) <= tol
