from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence, Union

import numpy as np

from fourierlcu.constants import DEFAULT_ATOL, MAX_STATEVECTOR_QUBITS
from fourierlcu.core.samples import SampleSet
from fourierlcu.core.sim.gates import GateOp, gate_matrix
from fourierlcu.libs.utils.enums import GateKind
from fourierlcu.libs.utils.errors import DimensionError, GateError, SamplingError

PhaseFunction = Union[Callable[[np.ndarray], np.ndarray], np.ndarray]


@lru_cache(maxsize=32)
def basis_bits(n: int) -> np.ndarray:
    """(2**n, n) array whose column q holds bit q of every basis index."""
    idx = np.arange(2**n, dtype=np.int64)
    bits = ((idx[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(np.int8)
    bits.setflags(write=False)
    return bits


@lru_cache(maxsize=32)
def hamming_weights(n: int) -> np.ndarray:
    weights = basis_bits(n).sum(axis=1).astype(np.int64)
    weights.setflags(write=False)
    return weights


def popcount(indices: np.ndarray) -> np.ndarray:
    """Hamming weight of arbitrary non-negative integer indices."""
    indices = np.asarray(indices, dtype=np.int64)
    count = np.zeros_like(indices)
    while np.any(indices):
        count += indices & 1
        indices = indices >> 1
    return count


def check_qubits(n: int):
    if n < 1 or n > MAX_STATEVECTOR_QUBITS:
        raise DimensionError(
            f"Statevector simulation supports 1..{MAX_STATEVECTOR_QUBITS} qubits, got {n}",
            type="statevector_cap",
        )


@dataclass
class Statevector:
    n: int
    amps: np.ndarray

    def __post_init__(self):
        check_qubits(self.n)
        self.amps = np.asarray(self.amps, dtype=complex)
        if self.amps.shape != (2**self.n,):
            raise DimensionError(
                f"Expected {2**self.n} amplitudes for {self.n} qubits, got shape {self.amps.shape}"
            )

    @classmethod
    def zero(cls, n: int) -> "Statevector":
        amps = np.zeros(2**n, dtype=complex)
        amps[0] = 1.0
        return cls(n, amps)

    @classmethod
    def basis(cls, n: int, index: int) -> "Statevector":
        amps = np.zeros(2**n, dtype=complex)
        amps[index] = 1.0
        return cls(n, amps)

    @classmethod
    def uniform(cls, n: int) -> "Statevector":
        return cls(n, np.full(2**n, 2 ** (-n / 2), dtype=complex))

    @classmethod
    def product(cls, qubit_states: Sequence[Sequence[complex]]) -> "Statevector":
        """Product state; ``qubit_states[q]`` is the 2-vector of qubit q."""
        amps = np.ones(1, dtype=complex)
        for single in qubit_states:
            # qubit q is bit q, so later qubits become more significant
            amps = np.kron(np.asarray(single, dtype=complex), amps)
        return cls(len(qubit_states), amps)

    def copy(self) -> "Statevector":
        return Statevector(self.n, self.amps.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def overlap(self, other: "Statevector") -> complex:
        return complex(np.vdot(self.amps, other.amps))

    def fidelity(self, other: "Statevector") -> float:
        return abs(self.overlap(other)) ** 2

    def equal_up_to_phase(self, other: "Statevector", atol: float = DEFAULT_ATOL) -> bool:
        return abs(abs(self.overlap(other)) - self.norm() * other.norm()) <= atol


def _check_targets(n: int, targets: Sequence[int]):
    for t in targets:
        if t < 0 or t >= n:
            raise GateError(f"Target qubit {t} out of range for {n} qubits")


def apply_matrix(amps: np.ndarray, n: int, matrix: np.ndarray, targets: Sequence[int]) -> np.ndarray:
    """Apply a 2**k x 2**k matrix to ``targets`` (targets[0] is the most significant local bit)."""
    k = len(targets)
    psi = amps.reshape((2,) * n)
    axes = [n - 1 - t for t in targets]
    op = matrix.reshape((2,) * (2 * k))
    out = np.tensordot(op, psi, axes=(list(range(k, 2 * k)), axes))
    out = np.moveaxis(out, list(range(k)), axes)
    return np.ascontiguousarray(out).reshape(-1)


def _diagonal_phases(n: int, gate: GateOp) -> np.ndarray:
    bits = basis_bits(n)
    kind = gate.kind
    if kind == GateKind.DIAGONAL:
        values = np.asarray(gate.function(np.arange(2**n, dtype=np.int64)), dtype=float)
        return np.exp(-1j * gate.value() * values)
    if kind == GateKind.RZ:
        theta = gate.value()
        z = 1 - 2 * bits[:, gate.targets[0]]
        return np.exp(-0.5j * theta * z)
    if kind == GateKind.P:
        return np.exp(1j * gate.value() * bits[:, gate.targets[0]])
    a, b = gate.targets
    if kind == GateKind.RZZ:
        zz = 1 - 2 * (bits[:, a] ^ bits[:, b])
        return np.exp(-0.5j * gate.value() * zz)
    # CZ
    return np.where(bits[:, a] & bits[:, b], -1.0, 1.0).astype(complex)


def apply_gate(state: Statevector, gate: GateOp) -> Statevector:
    """Apply ``gate`` and return a new state."""
    _check_targets(state.n, gate.targets)
    if gate.kind in (GateKind.RZ, GateKind.P, GateKind.RZZ, GateKind.CZ, GateKind.DIAGONAL):
        return Statevector(state.n, state.amps * _diagonal_phases(state.n, gate))
    matrix = gate_matrix(gate)
    return Statevector(state.n, apply_matrix(state.amps, state.n, matrix, gate.targets))


def phase_values(n: int, f: PhaseFunction) -> np.ndarray:
    if callable(f):
        values = f(np.arange(2**n, dtype=np.int64))
    else:
        values = f
    values = np.asarray(values, dtype=float)
    if values.shape != (2**n,):
        raise DimensionError(f"Phase function must give {2**n} values, got shape {values.shape}")
    return values


def apply_diagonal_phase(state: Statevector, f: PhaseFunction, gamma: float) -> Statevector:
    """Multiply amps[x] by e^{-i gamma f(x)}.

    ``f`` is either a callable over arrays of basis indices or a precomputed
    array of 2**n values.
    """
    values = phase_values(state.n, f)
    return Statevector(state.n, state.amps * np.exp(-1j * gamma * values))


def measurement_distribution(state: Statevector) -> np.ndarray:
    return np.abs(state.amps) ** 2


def sample_bitstrings(state: Statevector, shots: int, seed: int) -> SampleSet:
    """Multinomial shot sample of the computational-basis distribution."""
    if shots < 1:
        raise SamplingError(f"shots must be positive, got {shots}")
    probs = measurement_distribution(state)
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs / probs.sum())
    return SampleSet.from_counts(state.n, counts)


def apply_product_rotations(amps: np.ndarray, n: int, rotations: np.ndarray) -> np.ndarray:
    """Apply a batch of product unitaries to one state.

    ``rotations`` has shape (B, 2, 2) (same matrix on every qubit) or (B, n, 2, 2).
    Returns the (B, 2**n) batch of output amplitudes.
    """
    rotations = np.asarray(rotations, dtype=complex)
    if rotations.ndim == 3:
        rotations = np.broadcast_to(rotations[:, None], (rotations.shape[0], n, 2, 2))
    batch = rotations.shape[0]
    psi = np.broadcast_to(amps.reshape((1,) + (2,) * n), (batch,) + (2,) * n)
    for q in range(n):
        axis = 1 + n - 1 - q
        moved = np.moveaxis(psi, axis, -1)
        shape = moved.shape
        flat = moved.reshape(batch, -1, 2)
        out = np.einsum("bij,brj->bri", rotations[:, q], flat)
        psi = np.moveaxis(out.reshape(shape), -1, axis)
    return np.ascontiguousarray(psi).reshape(batch, -1)
