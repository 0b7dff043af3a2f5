from dataclasses import dataclass
from typing import Optional

import numpy as np

from fourierlcu.constants import HAAR_CHUNK_SIZE
from fourierlcu.core.sim.gates import euler_rotation
from fourierlcu.libs.utils.errors import DecompositionError
from fourierlcu.libs.utils.parallel import chunk_sizes, map_ordered, spawn_generators

TWO_PI = 2.0 * np.pi
FOUR_PI = 4.0 * np.pi


@dataclass(frozen=True)
class EulerAngles:
    """SU(2) element R_Z(alpha) R_Y(theta) R_Z(chi); alpha in [0, 2pi), theta in [0, pi], chi in [0, 4pi)."""

    alpha: float
    theta: float
    chi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= np.pi + 1e-12):
            raise DecompositionError(f"theta must lie in [0, pi], got {self.theta}")

    @classmethod
    def wrapped(cls, alpha: float, theta: float, chi: float) -> "EulerAngles":
        return cls(float(np.mod(alpha, TWO_PI)), float(theta), float(np.mod(chi, FOUR_PI)))

    def matrix(self) -> np.ndarray:
        return euler_rotation(self.alpha, self.theta, self.chi)


@dataclass
class EulerSamples:
    """Column-oriented batch of Euler angles."""

    alpha: np.ndarray
    theta: np.ndarray
    chi: np.ndarray

    def __len__(self) -> int:
        return len(self.alpha)

    def __getitem__(self, i: int) -> EulerAngles:
        return EulerAngles(float(self.alpha[i]), float(self.theta[i]), float(self.chi[i]))

    def take(self, indices: np.ndarray) -> "EulerSamples":
        return EulerSamples(self.alpha[indices], self.theta[indices], self.chi[indices])

    @classmethod
    def concat(cls, parts: list["EulerSamples"]) -> "EulerSamples":
        return cls(
            np.concatenate([p.alpha for p in parts]),
            np.concatenate([p.theta for p in parts]),
            np.concatenate([p.chi for p in parts]),
        )

    def rotations(self) -> np.ndarray:
        """(N, 2, 2) stack of R_Z(alpha) R_Y(theta) R_Z(chi)."""
        c = np.cos(self.theta / 2)
        s = np.sin(self.theta / 2)
        plus = np.exp(-0.5j * (self.alpha + self.chi))
        minus = np.exp(-0.5j * (self.alpha - self.chi))
        out = np.empty((len(self), 2, 2), dtype=complex)
        out[:, 0, 0] = plus * c
        out[:, 0, 1] = -minus * s
        out[:, 1, 0] = minus.conj() * s
        out[:, 1, 1] = plus.conj() * c
        return out


def _draw(rng: np.random.Generator, count: int) -> EulerSamples:
    alpha = rng.uniform(0.0, TWO_PI, size=count)
    theta = np.arccos(1.0 - 2.0 * rng.uniform(0.0, 1.0, size=count))
    chi = rng.uniform(0.0, FOUR_PI, size=count)
    return EulerSamples(alpha, theta, chi)


def haar_sample(seed: Optional[int] = None) -> EulerAngles:
    """One Haar-random SU(2) element; theta has density sin(theta)/2."""
    return _draw(np.random.default_rng(seed), 1)[0]


def haar_samples(count: int, seed: int, workers: int = 1, chunk: int = HAAR_CHUNK_SIZE) -> EulerSamples:
    """``count`` Haar draws; chunk c uses its own spawned stream, so results ignore ``workers``."""
    sizes = chunk_sizes(count, chunk)
    rngs = spawn_generators(seed, len(sizes))
    parts = map_ordered(lambda item: _draw(*item), list(zip(rngs, sizes)), workers=workers)
    if not parts:
        return EulerSamples(np.empty(0), np.empty(0), np.empty(0))
    return EulerSamples.concat(parts)
