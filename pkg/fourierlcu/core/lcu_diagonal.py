"""Discrete-Fourier LCU of diagonal unitaries.

For f: {0..m} -> R and an integer-valued g on bitstrings, the diagonal unitary
e^{-i gamma f(g(x))} is written as sum_j c_j V(theta_j) with
V(theta) = sum_x e^{i theta g(x)} |x><x| and theta_j = 2 pi j / (m + 1).
"""

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from loguru import logger

from fourierlcu.constants import PRUNE_THRESHOLD
from fourierlcu.core.sim.statevector import popcount
from fourierlcu.libs.utils.errors import DecompositionError

GFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class DiagonalLcu:
    m: int
    gamma: float
    f_values: np.ndarray
    coeffs: np.ndarray
    thetas: np.ndarray
    gamma_cost: float
    branch_probs: np.ndarray

    @property
    def l1_norm(self) -> float:
        return float(np.abs(self.coeffs).sum())

    @property
    def active_branches(self) -> np.ndarray:
        return np.flatnonzero(self.branch_probs > 0)

    def reconstruct(self, k: np.ndarray) -> np.ndarray:
        """sum_j c_j e^{i theta_j k} for integer levels ``k``."""
        k = np.asarray(k)
        return np.exp(1j * np.outer(k, self.thetas)) @ self.coeffs

    def target(self, k: np.ndarray) -> np.ndarray:
        return np.exp(-1j * self.gamma * self.f_values[np.asarray(k)])

    def to_record(self) -> dict:
        return {
            "m": int(self.m),
            "gamma": float(self.gamma),
            "f_values": [float(v) for v in self.f_values],
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
            "thetas": [float(t) for t in self.thetas],
            "gamma_cost": float(self.gamma_cost),
            "branch_probs": [float(q) for q in self.branch_probs],
        }

    @classmethod
    def from_record(cls, record: dict) -> "DiagonalLcu":
        return cls(
            m=int(record["m"]),
            gamma=float(record["gamma"]),
            f_values=np.asarray(record["f_values"], dtype=float),
            coeffs=np.asarray([complex(re, im) for re, im in record["coeffs"]]),
            thetas=np.asarray(record["thetas"], dtype=float),
            gamma_cost=float(record["gamma_cost"]),
            branch_probs=np.asarray(record["branch_probs"], dtype=float),
        )


def build_diagonal_lcu(
    f_values: Sequence[float], gamma: float, prune: float = PRUNE_THRESHOLD
) -> DiagonalLcu:
    """DFT coefficients c_j = 1/(m+1) sum_k e^{-i gamma f(k)} e^{-i theta_j k}."""
    f_values = np.asarray(f_values, dtype=float)
    if f_values.ndim != 1 or f_values.size == 0:
        raise DecompositionError("f_values must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(f_values)) or not np.isfinite(gamma):
        raise DecompositionError("f_values and gamma must be finite")

    size = f_values.size
    levels = np.arange(size)
    thetas = 2.0 * np.pi * levels / size
    dft = np.exp(-1j * np.outer(thetas, levels))
    coeffs = dft @ np.exp(-1j * gamma * f_values) / size

    mags = np.abs(coeffs)
    l1 = mags.sum()
    probs = np.where(mags >= prune, mags, 0.0)
    pruned = int(np.count_nonzero(mags < prune))
    if pruned:
        logger.debug(f"Pruned {pruned} diagonal LCU branch(es) below {prune:g}")
    probs = probs / probs.sum()

    lcu = DiagonalLcu(
        m=size - 1,
        gamma=float(gamma),
        f_values=f_values,
        coeffs=coeffs,
        thetas=thetas,
        gamma_cost=float(l1**2),
        branch_probs=probs,
    )
    logger.debug(f"Diagonal LCU m={lcu.m} gamma={gamma:.6g} Gamma={lcu.gamma_cost:.6g}")
    return lcu


def hamming_penalty_values(n: int, b: int) -> np.ndarray:
    """(k - b)^2 for k = 0..n."""
    if not 0 <= b <= n:
        raise DecompositionError(f"Target weight b={b} outside 0..{n}")
    k = np.arange(n + 1)
    return ((k - b) ** 2).astype(float)


def indicator_window_values(m: int, l: int, u: int) -> np.ndarray:
    """0 inside [l, u] and 1 outside, over levels 0..m."""
    if not 0 <= l <= u <= m:
        raise DecompositionError(f"Window [{l}, {u}] invalid for levels 0..{m}")
    k = np.arange(m + 1)
    return np.where((k >= l) & (k <= u), 0.0, 1.0)


def composed_values(m: int, f: Callable[[int], float]) -> np.ndarray:
    """Tabulate f over the range {0..m} of an integer-valued g."""
    return np.asarray([f(k) for k in range(m + 1)], dtype=float)


def hamming_weight_function(indices: np.ndarray) -> np.ndarray:
    return popcount(indices)


def quadratic_form_function(a: np.ndarray) -> GFunction:
    """g(x) = x^T A x for a 0/1 vector x read from the bits of the index."""
    a = np.asarray(a)
    n = a.shape[0]

    def g(indices: np.ndarray) -> np.ndarray:
        bits = (np.asarray(indices)[:, None] >> np.arange(n)) & 1
        return np.einsum("ci,ij,cj->c", bits, a, bits)

    return g


def lcu_basis_unitary_as_phase(lcu: DiagonalLcu, j: int, g: GFunction) -> GFunction:
    """Phase function x -> theta_j g(x); use with apply_diagonal_phase at gamma = -1."""
    if not 0 <= j <= lcu.m:
        raise DecompositionError(f"Branch index {j} outside 0..{lcu.m}")
    theta = float(lcu.thetas[j])

    def phase_fn(indices: np.ndarray) -> np.ndarray:
        return theta * np.asarray(g(indices), dtype=float)

    return phase_fn


def _g_levels(g: GFunction, n: int, m: int) -> np.ndarray:
    levels = np.asarray(g(np.arange(2**n, dtype=np.int64)))
    if levels.min() < 0 or levels.max() > m or not np.all(levels == np.round(levels)):
        raise DecompositionError(f"g must map bitstrings into the integers 0..{m}")
    return levels.astype(np.int64)


def reconstruct_unitary_error(lcu: DiagonalLcu, g: GFunction, n: int) -> float:
    """max_x |sum_j c_j e^{i theta_j g(x)} - e^{-i gamma f(g(x))}| over all 2**n strings."""
    if n > 12:
        raise DecompositionError(f"Exhaustive reconstruction check limited to n <= 12, got {n}")
    levels = _g_levels(g, n, lcu.m)
    # evaluate per distinct level, then broadcast
    uniq, inverse = np.unique(levels, return_inverse=True)
    err = np.abs(lcu.reconstruct(uniq) - lcu.target(uniq))
    return float(err[inverse.reshape(-1)].max())


def penalty_lcu(instance, gamma: float) -> DiagonalLcu:
    """LCU of e^{-i gamma (-lam (wt(x) - k)^2)} for a cardinality-constrained instance."""
    return build_diagonal_lcu(-instance.lam * hamming_penalty_values(instance.n, instance.k), gamma)
