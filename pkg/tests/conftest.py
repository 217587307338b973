"""Shared oracles and corpus builders.

The Kronecker oracle builds the full 2^n x 2^n matrix of a gate application
by explicit tensor products / basis enumeration, independently of the
engine's kernels, and is the reference for all equivalence checks.
"""
from __future__ import annotations

import random
from functools import reduce

import numpy as np
import pytest

from qxemu.circuit import Circuit, GateOp
from qxemu.gates import GateSpec, matrix_of

_I2 = np.eye(2, dtype=np.complex128)


def full_matrix_1q(u: np.ndarray, target: int, n: int) -> np.ndarray:
    """I ⊗ ... ⊗ u ⊗ ... ⊗ I with qubit 0 as the least significant bit."""
    mats = [_I2] * n
    mats[target] = np.asarray(u, dtype=np.complex128)
    return reduce(np.kron, [mats[q] for q in reversed(range(n))])


def full_matrix_2q(u: np.ndarray, control: int, target: int, n: int) -> np.ndarray:
    """Column-by-column construction over all 2^n basis states."""
    u = np.asarray(u, dtype=np.complex128)
    dim = 2**n
    full = np.zeros((dim, dim), dtype=np.complex128)
    for k in range(dim):
        cb = (k >> control) & 1
        tb = (k >> target) & 1
        col = 2 * cb + tb
        for cb2 in (0, 1):
            for tb2 in (0, 1):
                amp = u[2 * cb2 + tb2, col]
                if amp == 0:
                    continue
                k2 = k
                k2 = (k2 & ~(1 << control)) | (cb2 << control)
                k2 = (k2 & ~(1 << target)) | (tb2 << target)
                full[k2, k] += amp
    return full


def evolve_by_matrices(circuit: Circuit) -> np.ndarray:
    """Brute-force reference evolution: full-matrix product applied to |0...0⟩."""
    n = circuit.n_qubits
    vec = np.zeros(2**n, dtype=np.complex128)
    vec[0] = 1.0
    for op in circuit.ops:
        u = matrix_of(op.spec)
        if len(op.qubits) == 1:
            full = full_matrix_1q(u, op.qubits[0], n)
        else:
            full = full_matrix_2q(u, op.qubits[0], op.qubits[1], n)
        vec = full @ vec
    return vec


_PARAMLESS = ("id", "x", "y", "z", "h", "s", "sdg", "t", "tdg")


def random_gate_op(rnd: random.Random, n_qubits: int) -> GateOp:
    name = rnd.choice(_PARAMLESS + ("u1", "u2", "u3") + (("cx",) if n_qubits > 1 else ()))
    if name == "cx":
        control, target = rnd.sample(range(n_qubits), 2)
        return GateOp(GateSpec("cx"), (control, target))
    from qxemu.gates import PARAM_COUNT

    params = tuple(rnd.uniform(-2 * np.pi, 2 * np.pi) for _ in range(PARAM_COUNT[name]))
    return GateOp(GateSpec(name, params), (rnd.randrange(n_qubits),))


def random_circuit(
    rnd: random.Random,
    n_qubits: int,
    n_gates: int,
    measure_all: bool = False,
) -> Circuit:
    c = Circuit.empty(n_qubits, n_qubits if measure_all else 0)
    for _ in range(n_gates):
        c = c.append(random_gate_op(rnd, n_qubits))
    if measure_all:
        for q in range(n_qubits):
            c = c.measure(q, q)
    return c


@pytest.fixture
def rnd() -> random.Random:
    return random.Random(20260824)
