"""Circuit intermediate representation, construction, and backend validation.

Measurements are terminal: a measured qubit cannot receive further gates.
All circuits in the emulated workflow measure only at the end, so the IR
stores measurements separately from the gate list.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from qxemu.gates import ARITY, GateSpec

DEFAULT_READOUT_WIDTH = 5
MAX_QUBITS = 16


@dataclass(frozen=True)
class GateOp:
    """One circuit instruction: a gate spec applied to specific qubits.

    For cx, qubits is (control, target).
    """

    spec: GateSpec
    qubits: tuple

    def __post_init__(self):
        qubits = tuple(int(q) for q in self.qubits)
        if len(qubits) != ARITY[self.spec.name]:
            raise ValueError(
                f"{self.spec.name} acts on {ARITY[self.spec.name]} qubit(s), "
                f"got {len(qubits)}"
            )
        if len(set(qubits)) != len(qubits):
            raise ValueError("qubit indices must be distinct")
        object.__setattr__(self, "qubits", qubits)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list plus register sizes and the measurement map."""

    n_qubits: int
    n_clbits: int = 0
    ops: tuple = ()
    measurements: tuple = ()  # (qubit, clbit) pairs

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in 1..{MAX_QUBITS}")
        if self.n_clbits < 0:
            raise ValueError("n_clbits must be >= 0")
        ops = tuple(self.ops)
        meas = tuple((int(q), int(c)) for q, c in self.measurements)
        for op in ops:
            for q in op.qubits:
                if not 0 <= q < self.n_qubits:
                    raise IndexError(f"qubit {q} out of range")
        seen_cl = set()
        seen_q = set()
        for q, c in meas:
            if not 0 <= q < self.n_qubits:
                raise IndexError(f"measured qubit {q} out of range")
            if not 0 <= c < self.n_clbits:
                raise IndexError(f"clbit {c} out of range")
            if c in seen_cl:
                raise ValueError(f"clbit {c} written by two measurements")
            if q in seen_q:
                raise ValueError(f"qubit {q} measured twice")
            seen_cl.add(c)
            seen_q.add(q)
        object.__setattr__(self, "ops", ops)
        object.__setattr__(self, "measurements", meas)

    @classmethod
    def empty(cls, n_qubits: int, n_clbits: int = 0) -> "Circuit":
        return cls(n_qubits, n_clbits)

    @property
    def measured_qubits(self) -> set:
        return {q for q, _ in self.measurements}

    def append(self, op: GateOp) -> "Circuit":
        """Return the circuit with op appended. Gates after measurement are rejected."""
        measured = self.measured_qubits
        for q in op.qubits:
            if q in measured:
                raise ValueError(f"gate on qubit {q} after its measurement")
        return Circuit(self.n_qubits, self.n_clbits, self.ops + (op,), self.measurements)

    def measure(self, qubit: int, clbit: int) -> "Circuit":
        return Circuit(
            self.n_qubits, self.n_clbits, self.ops, self.measurements + ((qubit, clbit),)
        )

    # fluent construction helpers used throughout the experiments and tests
    def gate(self, name: str, *qubits: int, params=()) -> "Circuit":
        return self.append(GateOp(GateSpec(name, tuple(params)), tuple(qubits)))

    def h(self, q: int) -> "Circuit":
        return self.gate("h", q)

    def x(self, q: int) -> "Circuit":
        return self.gate("x", q)

    def cx(self, control: int, target: int) -> "Circuit":
        return self.gate("cx", control, target)

    def u1(self, phi: float, q: int) -> "Circuit":
        return self.gate("u1", q, params=(phi,))

    def u3(self, theta: float, phi: float, lam: float, q: int) -> "Circuit":
        return self.gate("u3", q, params=(theta, phi, lam))

    def to_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "n_clbits": self.n_clbits,
            "ops": [
                {"name": op.spec.name, "params": list(op.spec.params), "qubits": list(op.qubits)}
                for op in self.ops
            ],
            "measurements": [{"qubit": q, "clbit": c} for q, c in self.measurements],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Circuit":
        ops = tuple(
            GateOp(GateSpec(o["name"], tuple(o.get("params", []))), tuple(o["qubits"]))
            for o in d.get("ops", [])
        )
        meas = tuple((m["qubit"], m["clbit"]) for m in d.get("measurements", []))
        return cls(int(d["n_qubits"]), int(d.get("n_clbits", 0)), ops, meas)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Circuit":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Violation:
    kind: str  # cnot-direction | gate-not-in-basis | qubit-count-exceeds-backend
    message: str
    op_index: int = -1


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(circuit: Circuit, topo) -> ValidationReport:
    """Check a circuit against a backend. Violations are data, not exceptions."""
    violations = []
    if circuit.n_qubits > topo.n_qubits:
        violations.append(
            Violation(
                "qubit-count-exceeds-backend",
                f"circuit uses {circuit.n_qubits} qubits, backend "
                f"{topo.name} has {topo.n_qubits}",
            )
        )
    for i, op in enumerate(circuit.ops):
        if op.spec.name not in topo.basis:
            violations.append(
                Violation(
                    "gate-not-in-basis",
                    f"gate {op.spec.name} not in basis of {topo.name}",
                    i,
                )
            )
        if op.spec.name == "cx":
            control, target = op.qubits
            if max(op.qubits) < topo.n_qubits and not topo.cnot_allowed(control, target):
                violations.append(
                    Violation(
                        "cnot-direction",
                        f"cx q[{control}],q[{target}] not allowed on {topo.name}",
                        i,
                    )
                )
    return ValidationReport(tuple(violations))


def bitstring_of(outcome: int, circuit: Circuit, width: int | None = None) -> str:
    """Format a measured basis index as a classical bitstring.

    The rightmost character is c[0]; unmeasured clbits read 0. Default width
    is 5 (the five-qubit display convention) or n_clbits if larger.
    """
    if width is None:
        width = max(DEFAULT_READOUT_WIDTH, circuit.n_clbits)
    if width < circuit.n_clbits:
        raise ValueError(f"width {width} < n_clbits {circuit.n_clbits}")
    clbits = [0] * width
    for q, c in circuit.measurements:
        clbits[c] = (outcome >> q) & 1
    return "".join(str(clbits[width - 1 - j]) for j in range(width))
