"""Named gate catalogue.

Conventions:
    h  = (1/√2)[[1, 1], [1, -1]]
    u1(φ) = P(φ) = [[1, 0], [0, e^{iφ}]];  z = P(π), s = P(π/2), t = P(π/4)
    u2(φ,Φ) = (1/√2)[[1, -e^{iφ}], [e^{iΦ}, e^{i(φ+Φ)}]]
    u3(θ,φ,Φ) = [[cos(θ/2), -e^{iφ}sin(θ/2)], [e^{iΦ}sin(θ/2), e^{i(φ+Φ)}cos(θ/2)]]
    cx maps |x⟩|y⟩ → |x⟩|x⊕y⟩ with the control bit first.
    y = [[0, -i], [i, 0]], so Z·X = iY.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

PARAM_COUNT = {
    "id": 0,
    "x": 0,
    "y": 0,
    "z": 0,
    "h": 0,
    "s": 0,
    "sdg": 0,
    "t": 0,
    "tdg": 0,
    "u1": 1,
    "u2": 2,
    "u3": 3,
    "cx": 0,
}

ARITY = {name: (2 if name == "cx" else 1) for name in PARAM_COUNT}

GATE_NAMES = frozenset(PARAM_COUNT)


@dataclass(frozen=True)
class GateSpec:
    """A catalogue gate name plus its real angle parameters in radians."""

    name: str
    params: tuple = ()

    def __post_init__(self):
        if self.name not in GATE_NAMES:
            raise ValueError(f"unknown gate {self.name!r}")
        params = tuple(float(p) for p in self.params)
        if len(params) != PARAM_COUNT[self.name]:
            raise ValueError(
                f"{self.name} takes {PARAM_COUNT[self.name]} parameter(s), "
                f"got {len(params)}"
            )
        if not all(math.isfinite(p) for p in params):
            raise ValueError("gate angles must be finite")
        object.__setattr__(self, "params", params)

    @property
    def arity(self) -> int:
        return ARITY[self.name]


_FIXED_1Q = {
    "id": np.eye(2, dtype=np.complex128),
    "x": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    "h": np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2),
    "s": np.array([[1, 0], [0, 1j]], dtype=np.complex128),
    "sdg": np.array([[1, 0], [0, -1j]], dtype=np.complex128),
    "t": np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=np.complex128),
    "tdg": np.array([[1, 0], [0, np.exp(-1j * math.pi / 4)]], dtype=np.complex128),
}

_CX = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]],
    dtype=np.complex128,
)


def _u1(phi: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * phi)]], dtype=np.complex128)


def _u2(phi: float, lam: float) -> np.ndarray:
    return np.array(
        [[1, -np.exp(1j * phi)],
         [np.exp(1j * lam), np.exp(1j * (phi + lam))]],
        dtype=np.complex128,
    ) / math.sqrt(2)


def _u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [[c, -np.exp(1j * phi) * s],
         [np.exp(1j * lam) * s, np.exp(1j * (phi + lam)) * c]],
        dtype=np.complex128,
    )


def matrix_of(spec: GateSpec) -> np.ndarray:
    """The 2x2 (or 4x4 for cx) unitary matrix of a catalogue gate."""
    if spec.name == "cx":
        return _CX.copy()
    if spec.name in _FIXED_1Q:
        return _FIXED_1Q[spec.name].copy()
    if spec.name == "u1":
        return _u1(*spec.params)
    if spec.name == "u2":
        return _u2(*spec.params)
    return _u3(*spec.params)


_SELF_ADJOINT = {"id", "x", "y", "z", "h"}
_ADJOINT_PAIRS = {"s": "sdg", "sdg": "s", "t": "tdg", "tdg": "t"}


def adjoint_of(spec: GateSpec) -> GateSpec:
    """The catalogue gate whose matrix is the conjugate transpose of spec's.

    u2 and u3 close under adjoint via angle transforms:
    u2(φ,Φ)† = u3(-π/2, -Φ, -φ) and u3(θ,φ,Φ)† = u3(-θ, -Φ, -φ).
    """
    if spec.name == "cx":
        raise ValueError("adjoint_of is defined for single-qubit gates only")
    if spec.name in _SELF_ADJOINT:
        return spec
    if spec.name in _ADJOINT_PAIRS:
        return GateSpec(_ADJOINT_PAIRS[spec.name])
    if spec.name == "u1":
        return GateSpec("u1", (-spec.params[0],))
    if spec.name == "u2":
        phi, lam = spec.params
        return GateSpec("u3", (-math.pi / 2, -lam, -phi))
    theta, phi, lam = spec.params
    return GateSpec("u3", (-theta, -lam, -phi))
