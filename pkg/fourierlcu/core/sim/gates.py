from dataclasses import dataclass, replace
from typing import Callable, Mapping, Optional, Union

import numpy as np

from fourierlcu.libs.utils.enums import GateKind
from fourierlcu.libs.utils.errors import GateError, UnboundParameterError

Angle = Union[float, str]

_ARITY = {
    GateKind.RZ: 1,
    GateKind.RY: 1,
    GateKind.RX: 1,
    GateKind.H: 1,
    GateKind.P: 1,
    GateKind.RZZ: 2,
    GateKind.CZ: 2,
    GateKind.SWAP: 2,
    GateKind.XY: 2,
}

_PARAMETRIC = {
    GateKind.RZ,
    GateKind.RY,
    GateKind.RX,
    GateKind.P,
    GateKind.RZZ,
    GateKind.XY,
    GateKind.DIAGONAL,
}

DIAGONAL_KINDS = {GateKind.RZ, GateKind.P, GateKind.RZZ, GateKind.CZ, GateKind.DIAGONAL}


@dataclass(frozen=True)
class GateOp:
    """A gate acting on ``targets``.

    ``angle`` is either a number in radians or the name of a circuit parameter.
    For ``DIAGONAL`` gates, ``function`` maps an array of basis indices to real
    values f(x) and the gate applies e^{-i angle f(x)}.
    """

    kind: GateKind
    targets: tuple[int, ...]
    angle: Optional[Angle] = None
    function: Optional[Callable[[np.ndarray], np.ndarray]] = None
    label: str = ""

    def __post_init__(self):
        if self.kind != GateKind.DIAGONAL and len(self.targets) != _ARITY[self.kind]:
            raise GateError(
                f"{self.kind.value} acts on {_ARITY[self.kind]} qubit(s), got {self.targets}"
            )
        if len(set(self.targets)) != len(self.targets):
            raise GateError(f"Gate targets must be distinct, got {self.targets}")
        if self.kind in _PARAMETRIC and self.angle is None:
            raise GateError(f"{self.kind.value} requires an angle")
        if self.kind == GateKind.DIAGONAL and self.function is None:
            raise GateError("Diagonal gate requires a phase function")
        if isinstance(self.angle, float) and not np.isfinite(self.angle):
            raise GateError(f"Gate angle must be finite, got {self.angle}")

    @property
    def is_bound(self) -> bool:
        return not isinstance(self.angle, str)

    def bind(self, params: Mapping[str, float]) -> "GateOp":
        if isinstance(self.angle, str) and self.angle in params:
            return replace(self, angle=float(params[self.angle]))
        return self

    def value(self) -> float:
        if isinstance(self.angle, str):
            raise UnboundParameterError(
                f"Parameter '{self.angle}' of {self.kind.value} gate is unbound"
            )
        return float(self.angle)


def rz(theta: float) -> np.ndarray:
    return np.array(
        [[np.exp(-0.5j * theta), 0.0], [0.0, np.exp(0.5j * theta)]], dtype=complex
    )


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def hadamard() -> np.ndarray:
    return np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)


def phase(phi: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * phi)]).astype(complex)


def rzz(theta: float) -> np.ndarray:
    d = np.exp(-0.5j * theta * np.array([1.0, -1.0, -1.0, 1.0]))
    return np.diag(d)


def cz() -> np.ndarray:
    return np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)


def swap() -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = m[1, 2] = m[2, 1] = 1.0
    return m


def xy(theta: float) -> np.ndarray:
    """exp(-i theta/2 (XX + YY)); identity on |00> and |11>."""
    c, s = np.cos(theta), np.sin(theta)
    m = np.eye(4, dtype=complex)
    m[1, 1] = m[2, 2] = c
    m[1, 2] = m[2, 1] = -1j * s
    return m


def euler_rotation(alpha: float, theta: float, chi: float) -> np.ndarray:
    """R(g) = R_Z(alpha) R_Y(theta) R_Z(chi) as a matrix product."""
    return rz(alpha) @ ry(theta) @ rz(chi)


def gate_matrix(gate: GateOp) -> np.ndarray:
    """Dense matrix of a one- or two-qubit gate.

    Two-qubit matrices are indexed by 2*b(targets[0]) + b(targets[1]).
    """
    kind = gate.kind
    if kind == GateKind.H:
        return hadamard()
    if kind == GateKind.CZ:
        return cz()
    if kind == GateKind.SWAP:
        return swap()
    if kind == GateKind.DIAGONAL:
        raise GateError("Diagonal gates have no fixed-size matrix")
    theta = gate.value()
    return {
        GateKind.RZ: rz,
        GateKind.RY: ry,
        GateKind.RX: rx,
        GateKind.P: phase,
        GateKind.RZZ: rzz,
        GateKind.XY: xy,
    }[kind](theta)
