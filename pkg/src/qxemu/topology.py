"""Backend descriptions: qubit counts, directed CNOT adjacency, basis gates.

Coupling maps are data, not code. A map is written in the compact brace
syntax ``{0: [1, 2], 1: [2]}`` where ``a: [b]`` means a CNOT with control a
and target b is allowed. Topology config files are JSON with fields
name / n_qubits / coupling (brace syntax string or object) / basis.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

REQUIRED_BASIS = frozenset(
    {"id", "x", "z", "h", "s", "sdg", "t", "tdg", "u1", "u2", "u3", "cx"}
)
DEFAULT_BASIS = REQUIRED_BASIS | {"y"}

BUILTIN_NAMES = ("ibmqx2", "ibmqx4", "custom")


class CouplingMapError(ValueError):
    """Coupling map syntax or constraint error, with character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class BackendTopology:
    name: str
    n_qubits: int
    coupling: dict  # control -> tuple of allowed targets
    basis: frozenset = DEFAULT_BASIS

    def __post_init__(self):
        coupling = {}
        for c, targets in self.coupling.items():
            c = int(c)
            targets = tuple(int(t) for t in targets)
            if not 0 <= c < self.n_qubits:
                raise ValueError(f"control {c} out of range")
            for t in targets:
                if not 0 <= t < self.n_qubits:
                    raise ValueError(f"target {t} out of range")
                if t == c:
                    raise ValueError(f"self-loop on qubit {c}")
            coupling[c] = targets
        object.__setattr__(self, "coupling", coupling)
        basis = frozenset(self.basis)
        missing = REQUIRED_BASIS - basis
        if missing:
            raise ValueError(f"basis is missing required gates: {sorted(missing)}")
        object.__setattr__(self, "basis", basis)

    def cnot_allowed(self, control: int, target: int) -> bool:
        for q in (control, target):
            if not 0 <= q < self.n_qubits:
                raise IndexError(f"qubit {q} out of range for {self.n_qubits} qubits")
        return target in self.coupling.get(control, ())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n_qubits": self.n_qubits,
            "coupling": {str(c): list(ts) for c, ts in sorted(self.coupling.items())},
            "basis": sorted(self.basis),
        }


def cnot_allowed(topo: BackendTopology, control: int, target: int) -> bool:
    return topo.cnot_allowed(control, target)


# The two five-qubit cloud machines plus the simulation-only fully connected
# backend. IBMQX5 (16 qubits) is intentionally absent: its map is not defined
# here and validation would be guesswork.
_IBMQX2 = {0: [1, 2], 1: [2], 3: [2, 4], 4: [2]}
_IBMQX4 = {1: [0], 2: [0, 1, 4], 3: [2, 4]}


def builtin(name: str) -> BackendTopology:
    """One of the built-in backends: ibmqx2, ibmqx4, or custom."""
    if name == "ibmqx2":
        return BackendTopology("ibmqx2", 5, _IBMQX2)
    if name == "ibmqx4":
        return BackendTopology("ibmqx4", 5, _IBMQX4)
    if name == "custom":
        coupling = {c: [t for t in range(5) if t != c] for c in range(5)}
        return BackendTopology("custom", 5, coupling)
    raise ValueError(f"unknown backend {name!r}; known: {', '.join(BUILTIN_NAMES)}")


def parse_coupling_map(text: str, n_qubits: int | None = None) -> dict:
    """Parse the brace/bracket coupling-map syntax into a dict.

    Rejects self-loops, and indices >= n_qubits when a qubit count is given.
    """
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def expect(ch: str):
        nonlocal pos
        skip_ws()
        if pos >= len(text) or text[pos] != ch:
            found = text[pos] if pos < len(text) else "end of input"
            raise CouplingMapError(f"expected {ch!r}, found {found!r}", pos)
        pos += 1

    def read_int() -> int:
        nonlocal pos
        skip_ws()
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == start:
            found = text[pos] if pos < len(text) else "end of input"
            raise CouplingMapError(f"expected an integer, found {found!r}", pos)
        value = int(text[start:pos])
        if n_qubits is not None and value >= n_qubits:
            raise CouplingMapError(f"index {value} >= n_qubits {n_qubits}", start)
        return value

    result: dict = {}
    expect("{")
    skip_ws()
    if pos < len(text) and text[pos] == "}":
        pos += 1
    else:
        while True:
            control = read_int()
            if control in result:
                raise CouplingMapError(f"duplicate control {control}", pos)
            expect(":")
            expect("[")
            targets = []
            skip_ws()
            if pos < len(text) and text[pos] == "]":
                pos += 1
            else:
                while True:
                    t = read_int()
                    if t == control:
                        raise CouplingMapError(f"self-loop on qubit {control}", pos)
                    targets.append(t)
                    skip_ws()
                    if pos < len(text) and text[pos] == ",":
                        pos += 1
                        continue
                    expect("]")
                    break
            result[control] = tuple(targets)
            skip_ws()
            if pos < len(text) and text[pos] == ",":
                pos += 1
                continue
            expect("}")
            break
    skip_ws()
    if pos != len(text):
        raise CouplingMapError("trailing characters after map", pos)
    return result


def format_coupling_map(coupling: dict) -> str:
    """Canonical printer for the brace syntax; round-trips with the parser."""
    entries = ", ".join(
        f"{c}: [{', '.join(str(t) for t in targets)}]"
        for c, targets in sorted(coupling.items())
    )
    return "{" + entries + "}"


def load_topology(path: str) -> BackendTopology:
    """Load one topology from a JSON config file."""
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    n_qubits = int(data["n_qubits"])
    coupling = data.get("coupling", {})
    if isinstance(coupling, str):
        coupling = parse_coupling_map(coupling, n_qubits)
    basis = frozenset(data["basis"]) if "basis" in data else DEFAULT_BASIS
    return BackendTopology(str(data["name"]), n_qubits, dict(coupling), basis)
