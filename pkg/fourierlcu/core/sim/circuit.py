from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

import numpy as np

from fourierlcu.constants import CZ_COST, MAX_DENSITY_QUBITS
from fourierlcu.core.sim.gates import GateOp
from fourierlcu.core.sim.statevector import Statevector, apply_gate, check_qubits
from fourierlcu.libs.utils.enums import GateKind
from fourierlcu.libs.utils.errors import DimensionError, GateError, UnboundParameterError


@dataclass
class Circuit:
    """Ordered gate list on ``n`` qubits with optional named parameters."""

    n: int
    ops: list[GateOp] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        check_qubits(self.n)
        for op in self.ops:
            self._check(op)

    def _check(self, op: GateOp):
        for t in op.targets:
            if t < 0 or t >= self.n:
                raise GateError(f"Gate {op.kind.value} targets qubit {t} outside 0..{self.n - 1}")

    def append(self, op: GateOp) -> "Circuit":
        self._check(op)
        self.ops.append(op)
        return self

    def extend(self, ops: Iterable[GateOp]) -> "Circuit":
        for op in ops:
            self.append(op)
        return self

    def compose(self, other: "Circuit") -> "Circuit":
        if other.n != self.n:
            raise DimensionError(f"Cannot compose circuits on {self.n} and {other.n} qubits")
        return Circuit(self.n, self.ops + other.ops, name=self.name)

    @property
    def parameters(self) -> set[str]:
        return {op.angle for op in self.ops if isinstance(op.angle, str)}

    def bind(self, params: Mapping[str, float]) -> "Circuit":
        return Circuit(self.n, [op.bind(params) for op in self.ops], name=self.name)

    def __len__(self) -> int:
        return len(self.ops)


def run_circuit(
    circuit: Circuit, initial: Optional[Statevector] = None, params: Optional[Mapping[str, float]] = None
) -> Statevector:
    """Apply the gates of ``circuit`` in order to ``initial`` (|0...0> by default)."""
    if params:
        circuit = circuit.bind(params)
    missing = circuit.parameters
    if missing:
        raise UnboundParameterError(f"Unbound circuit parameters: {sorted(missing)}")
    state = initial if initial is not None else Statevector.zero(circuit.n)
    if state.n != circuit.n:
        raise DimensionError(f"Circuit has {circuit.n} qubits but the state has {state.n}")
    for op in circuit.ops:
        state = apply_gate(state, op)
    return state


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense unitary of a bound circuit, column by column."""
    if circuit.n > MAX_DENSITY_QUBITS:
        raise DimensionError(f"Dense unitaries are limited to {MAX_DENSITY_QUBITS} qubits")
    dim = 2**circuit.n
    columns = [run_circuit(circuit, Statevector.basis(circuit.n, i)).amps for i in range(dim)]
    return np.stack(columns, axis=1)


def phase_aligned_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Frobenius distance between ``u`` and ``v`` after removing the best global phase."""
    overlap = np.vdot(v, u)
    ph = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(u - ph * v))


def cz_count(circuit: Circuit) -> int:
    """CZ-equivalent two-qubit gate count."""
    return sum(CZ_COST.get(op.kind.value, 0) for op in circuit.ops)


def to_gate_list(circuit: Circuit) -> str:
    """One gate per line: kind, comma-separated targets, angle (or parameter name)."""
    lines = []
    for op in circuit.ops:
        targets = ",".join(str(t) for t in op.targets) if op.targets else "*"
        if op.angle is None:
            angle = "-"
        elif isinstance(op.angle, str):
            angle = op.angle
        else:
            angle = repr(float(op.angle))
        kind = op.kind.value
        if op.kind == GateKind.DIAGONAL and op.label:
            kind = f"{kind}:{op.label}"
        lines.append(f"{kind} {targets} {angle}")
    return "\n".join(lines) + ("\n" if lines else "")
