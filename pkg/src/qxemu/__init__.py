"""Desk-scale emulator of the five-qubit IBM Q cloud machines."""

from qxemu.linalg import (
    StateVector,
    apply_1q,
    apply_2q,
    equal_up_to_global_phase,
    is_unitary,
    probabilities,
)
from qxemu.gates import GateSpec, adjoint_of, matrix_of
from qxemu.circuit import Circuit, GateOp, ValidationReport, Violation, bitstring_of, validate
from qxemu.topology import BackendTopology, builtin, cnot_allowed, parse_coupling_map
from qxemu.engine import Histogram, NoiseModel, RunConfig, sample, sample_noisy, statevector
from qxemu.qasm import QasmError, emit, parse

__version__ = "0.1.0"

__all__ = [
    "StateVector",
    "apply_1q",
    "apply_2q",
    "equal_up_to_global_phase",
    "is_unitary",
    "probabilities",
    "GateSpec",
    "adjoint_of",
    "matrix_of",
    "Circuit",
    "GateOp",
    "ValidationReport",
    "Violation",
    "bitstring_of",
    "validate",
    "BackendTopology",
    "builtin",
    "cnot_allowed",
    "parse_coupling_map",
    "Histogram",
    "NoiseModel",
    "RunConfig",
    "sample",
    "sample_noisy",
    "statevector",
    "QasmError",
    "emit",
    "parse",
]
