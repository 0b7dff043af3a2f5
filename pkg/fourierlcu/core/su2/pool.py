"""Haar candidate pools for the XY-mixer LCU."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from loguru import logger

from fourierlcu.core.su2.haar import EulerAngles, EulerSamples, haar_samples
from fourierlcu.core.su2.sectors import spin_sectors
from fourierlcu.core.su2.xy import XyPoolBasis
from fourierlcu.libs.utils.errors import DecompositionError


@dataclass(frozen=True)
class Su2Branch:
    g: EulerAngles
    weight: complex

    @property
    def abs_weight(self) -> float:
        return abs(self.weight)

    @property
    def phase(self) -> float:
        return float(np.angle(self.weight))


@dataclass
class Su2Pool:
    """Weighted Haar pool.

    ``alpha_hat`` is the pool mean of |a|; ``gamma_hat`` and ``gamma_sigma``
    come from an independent Haar batch.
    """

    n: int
    beta: float
    samples: EulerSamples
    weights: np.ndarray
    alpha_hat: float
    gamma_hat: float
    gamma_sigma: float
    sample_probs: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.samples)

    def branch(self, i: int) -> Su2Branch:
        return Su2Branch(self.samples[i], complex(self.weights[i]))

    @property
    def branches(self) -> list[Su2Branch]:
        return [self.branch(i) for i in range(self.size)]

    def cost_bound(self) -> int:
        return spin_sectors(self.n).cost_bound()


@dataclass
class Su2Selection:
    """Branches drawn from a pool, with the cost used to weight them."""

    n: int
    beta: float
    indices: np.ndarray
    samples: EulerSamples
    phases: np.ndarray
    gamma_hat: float
    gamma_sigma: float

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def branches(self) -> list[EulerAngles]:
        return [self.samples[i] for i in range(len(self))]


def estimate_gamma(abs_weights: np.ndarray) -> tuple[float, float]:
    """(mean |a|)^2 with its delta-method standard error."""
    mean = float(abs_weights.mean())
    sigma = 2.0 * mean * float(abs_weights.std(ddof=1)) / np.sqrt(len(abs_weights))
    return mean**2, sigma


class XyLcuFamily:
    """Fixed Haar pool and Gamma batch for the XY mixer, re-weighted per beta.

    Selection at each beta uses the same selection seed, so repeated calls are
    identical and nearby betas share random numbers.
    """

    def __init__(
        self,
        n: int,
        pool_size: int,
        circuits: int,
        gamma_samples: int,
        seed: int,
        workers: int = 1,
    ):
        if not pool_size >= circuits >= 1:
            raise DecompositionError(f"Need pool_size >= circuits >= 1, got {pool_size} and {circuits}")
        pool_seed, selection_seed, gamma_seed = np.random.SeedSequence(seed).generate_state(3)
        self.n = n
        self.circuits = circuits
        self.selection_seed = int(selection_seed)
        self.samples = haar_samples(pool_size, int(pool_seed), workers=workers)
        self.basis = XyPoolBasis(n, self.samples)
        self.gamma_basis = XyPoolBasis(n, haar_samples(gamma_samples, int(gamma_seed), workers=workers))
        self._cache: dict[float, Su2Selection] = {}
        logger.debug(f"XY LCU family: n={n}, pool={pool_size}, circuits={circuits}, gamma batch={gamma_samples}")

    def pool(self, beta: float) -> Su2Pool:
        weights = self.basis.coefficients(beta)
        abs_w = np.abs(weights)
        gamma_hat, sigma = estimate_gamma(np.abs(self.gamma_basis.coefficients(beta)))
        return Su2Pool(
            n=self.n,
            beta=float(beta),
            samples=self.samples,
            weights=weights,
            alpha_hat=float(abs_w.mean()),
            gamma_hat=gamma_hat,
            gamma_sigma=sigma,
            sample_probs=abs_w / abs_w.sum(),
        )

    def select(self, beta: float, pool: Optional[Su2Pool] = None) -> Su2Selection:
        beta = float(beta)
        if beta not in self._cache:
            pool = pool if pool is not None else self.pool(beta)
            rng = np.random.default_rng(self.selection_seed)
            idx = rng.choice(pool.size, size=self.circuits, replace=True, p=pool.sample_probs)
            self._cache[beta] = Su2Selection(
                n=self.n,
                beta=beta,
                indices=idx,
                samples=self.samples.take(idx),
                phases=np.angle(pool.weights[idx]),
                gamma_hat=pool.gamma_hat,
                gamma_sigma=pool.gamma_sigma,
            )
            logger.debug(f"beta={beta:.6g}: Gamma_hat={pool.gamma_hat:.6g} +- {pool.gamma_sigma:.3g}")
        return self._cache[beta]


def build_su2_pool(
    n: int,
    beta: float,
    pool_size: int,
    circuits: int,
    gamma_samples: int,
    seed: int,
    workers: int = 1,
) -> tuple[Su2Pool, Su2Selection]:
    """Haar pool weighted by the XY coefficient function, plus ``circuits`` branches drawn with replacement."""
    family = XyLcuFamily(n, pool_size, circuits, gamma_samples, seed, workers=workers)
    pool = family.pool(beta)
    return pool, family.select(beta, pool)
