from dataclasses import dataclass

import numpy as np

from fourierlcu.constants import DEFAULT_ATOL, MAX_DENSITY_QUBITS
from fourierlcu.core.sim.statevector import Statevector
from fourierlcu.libs.utils.errors import DimensionError


def check_density_qubits(n: int):
    if n < 1 or n > MAX_DENSITY_QUBITS:
        raise DimensionError(
            f"Density-matrix simulation supports 1..{MAX_DENSITY_QUBITS} qubits, got {n}",
            type="density_cap",
        )


@dataclass
class DensityMatrix:
    """Dense n-qubit operator; trace below one is allowed for unnormalized branches."""

    n: int
    mat: np.ndarray

    def __post_init__(self):
        check_density_qubits(self.n)
        self.mat = np.asarray(self.mat, dtype=complex)
        dim = 2**self.n
        if self.mat.shape != (dim, dim):
            raise DimensionError(f"Expected a {dim}x{dim} matrix, got {self.mat.shape}")

    @classmethod
    def from_statevector(cls, state: Statevector) -> "DensityMatrix":
        return cls(state.n, np.outer(state.amps, state.amps.conj()))

    @classmethod
    def random_pure(cls, n: int, rng: np.random.Generator) -> "DensityMatrix":
        amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        return cls.from_statevector(Statevector(n, amps / np.linalg.norm(amps)))

    @classmethod
    def random_mixed(cls, n: int, rng: np.random.Generator, rank: int = 2) -> "DensityMatrix":
        dim = 2**n
        a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
        rho = a @ a.conj().T
        return cls(n, rho / np.trace(rho).real)

    def trace(self) -> complex:
        return complex(np.trace(self.mat))

    def is_hermitian(self, atol: float = DEFAULT_ATOL) -> bool:
        return bool(np.allclose(self.mat, self.mat.conj().T, atol=atol))

    def evolve(self, unitary: np.ndarray) -> "DensityMatrix":
        if unitary.shape != self.mat.shape:
            raise DimensionError(f"Operator shape {unitary.shape} does not match {self.mat.shape}")
        return DensityMatrix(self.n, unitary @ self.mat @ unitary.conj().T)

    def probabilities(self) -> np.ndarray:
        return np.real(np.diag(self.mat)).copy()

    def distance(self, other: "DensityMatrix") -> float:
        """Largest absolute entry of the difference."""
        return float(np.max(np.abs(self.mat - other.mat)))

    def __sub__(self, other: "DensityMatrix") -> "DensityMatrix":
        return DensityMatrix(self.n, self.mat - other.mat)

    def __add__(self, other: "DensityMatrix") -> "DensityMatrix":
        return DensityMatrix(self.n, self.mat + other.mat)

    def scaled(self, factor: float) -> "DensityMatrix":
        return DensityMatrix(self.n, factor * self.mat)
