"""SU(2) Fourier coefficients, with the closed form for the XY mixer.

The XY mixer is U_XY(beta) = exp(-i beta (J_x^2 + J_y^2)) with J = sum of Pauli
operators; on the spin-j sector it is diagonal with eigenvalues
4 (j(j+1) - m^2).
"""

from typing import Mapping

import numpy as np
from loguru import logger
from scipy.linalg import eigh
from scipy.optimize import linear_sum_assignment

from fourierlcu.constants import HAAR_CHUNK_SIZE, MAX_DENSITY_QUBITS
from fourierlcu.core.su2.haar import EulerAngles, EulerSamples, haar_samples
from fourierlcu.core.su2.sectors import spin_sectors, two_j_of
from fourierlcu.core.su2.wigner import magnetic_numbers, small_d_doubled, wigner_big_d
from fourierlcu.libs.utils.errors import DecompositionError, DimensionError, SamplingError

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
MAX_MC_QUBITS = 6


def xy_energy(two_j: int, two_m) -> np.ndarray:
    j = two_j / 2
    m = np.asarray(two_m) / 2
    return 4.0 * (j * (j + 1) - m**2)


def xy_block_unitaries(n: int, beta: float) -> dict[float, np.ndarray]:
    """A_j(beta) for every sector, keyed by j."""
    blocks = {}
    for two_j in spin_sectors(n).two_js:
        energies = xy_energy(two_j, magnetic_numbers(two_j))
        blocks[two_j / 2] = np.diag(np.exp(-1j * beta * energies))
    return blocks


def xy_spectrum(n: int) -> np.ndarray:
    """Sorted eigenvalues of J_x^2 + J_y^2 with sector multiplicities."""
    sectors = spin_sectors(n)
    values = []
    for two_j, mult in zip(sectors.two_js, sectors.mults):
        values.extend(np.repeat(xy_energy(two_j, magnetic_numbers(two_j)), mult))
    return np.sort(np.asarray(values))


def _embed(op: np.ndarray, q: int, n: int) -> np.ndarray:
    # qubit q is bit q, so it sits q places from the right of the Kronecker product
    return np.kron(np.kron(np.eye(2 ** (n - 1 - q)), op), np.eye(2**q))


def xy_hamiltonian_dense(n: int) -> np.ndarray:
    if n > MAX_DENSITY_QUBITS:
        raise DimensionError(f"Dense XY Hamiltonian limited to {MAX_DENSITY_QUBITS} qubits, got {n}")
    jx = sum(_embed(PAULI_X, q, n) for q in range(n))
    jy = sum(_embed(PAULI_Y, q, n) for q in range(n))
    return jx @ jx + jy @ jy


def xy_unitary_dense(n: int, beta: float) -> np.ndarray:
    """exp(-i beta H_XY) by dense diagonalization."""
    h = xy_hamiltonian_dense(n)
    values, vectors = eigh(h)
    return (vectors * np.exp(-1j * beta * values)) @ vectors.conj().T


def xy_eigenphase_error(n: int, beta: float) -> float:
    """Largest gap between the eigenvalues of dense U_XY(beta) and exp(-i beta E_jm), matched one to one."""
    actual = np.linalg.eigvals(xy_unitary_dense(n, beta))
    expected = np.exp(-1j * beta * xy_spectrum(n))
    gaps = np.abs(actual[:, None] - expected[None, :])
    rows, cols = linear_sum_assignment(gaps)
    return float(gaps[rows, cols].max())


def coeff_general(u_blocks: Mapping[float, np.ndarray], g: EulerAngles, n: int) -> complex:
    """a_U(g) = sum_j (2j+1) Tr[U_j D^j(g)^dagger]."""
    expected = set(spin_sectors(n).two_js)
    given = {two_j_of(j): block for j, block in u_blocks.items()}
    if set(given) != expected:
        missing = sorted(t / 2 for t in expected - set(given))
        extra = sorted(t / 2 for t in set(given) - expected)
        raise DecompositionError(f"Sector mismatch: missing {missing}, unexpected {extra}")

    total = 0.0j
    for two_j, block in given.items():
        block = np.asarray(block, dtype=complex)
        if block.shape != (two_j + 1, two_j + 1):
            raise DecompositionError(f"Block for j={two_j / 2} must be {two_j + 1}x{two_j + 1}")
        if not np.allclose(block @ block.conj().T, np.eye(two_j + 1), atol=1e-8):
            raise DecompositionError(f"Block for j={two_j / 2} is not unitary")
        d = wigner_big_d(two_j / 2, g)
        total += (two_j + 1) * np.trace(block @ d.conj().T)
    return complex(total)


class XyPoolBasis:
    """beta-independent real basis of the XY coefficient function over fixed samples.

    With s = alpha + chi and d^j_{mm} = d^j_{-m,-m},
    a_beta(g) = sum_{j, m >= 0} w_m (2j+1) d^j_{mm}(theta) cos(m s) e^{-i beta E_{jm}},
    where w_m = 2 for m > 0 and 1 for m = 0.
    """

    def __init__(self, n: int, samples: EulerSamples):
        self.n = n
        self.size = len(samples)
        s = samples.alpha + samples.chi
        columns, energies = [], []
        for two_j in spin_sectors(n).two_js:
            for two_m in range(two_j, -1, -2):
                weight = (two_j + 1) * (2.0 if two_m > 0 else 1.0)
                d = small_d_doubled(two_j, two_m, two_m, samples.theta)
                columns.append(weight * d * np.cos(0.5 * two_m * s))
                energies.append(float(xy_energy(two_j, two_m)))
        self.matrix = np.stack(columns, axis=1) if columns else np.zeros((self.size, 0))
        self.energies = np.asarray(energies)

    def coefficients(self, beta: float) -> np.ndarray:
        return self.matrix @ np.exp(-1j * beta * self.energies)


def coeff_xy(n: int, beta: float, g: EulerAngles) -> complex:
    """Closed-form a_beta(g) for the XY mixer."""
    samples = EulerSamples(np.array([g.alpha]), np.array([g.theta]), np.array([g.chi]))
    return complex(XyPoolBasis(n, samples).coefficients(beta)[0])


def _tensor_power(rotations: np.ndarray, n: int) -> np.ndarray:
    out = rotations
    for _ in range(n - 1):
        batch, d = out.shape[0], out.shape[1]
        out = np.einsum("bij,bkl->bikjl", out, rotations).reshape(batch, 2 * d, 2 * d)
    return out


def _weighted_sum(n: int, draws: EulerSamples, weights: np.ndarray, start: int, stop: int) -> np.ndarray:
    dim = 2**n
    chunk = max(64, min(HAAR_CHUNK_SIZE, (1 << 22) // (dim * dim)))
    total = np.zeros((dim, dim), dtype=complex)
    for lo in range(start, stop, chunk):
        hi = min(lo + chunk, stop)
        part = draws.take(np.arange(lo, hi))
        total += np.einsum("b,bij->ij", weights[lo:hi], _tensor_power(part.rotations(), n))
    return total


def mc_block_estimates(n: int, beta: float, block_size: int, blocks: int, seed: int) -> np.ndarray:
    """Estimates from consecutive blocks of one Haar stream, shape (blocks, 2**n, 2**n).

    The stream is the one ``mc_reconstruct_xy`` draws for ``block_size * blocks``
    samples, so the block mean is that estimate.
    """
    if n > MAX_MC_QUBITS:
        raise DimensionError(f"Monte-Carlo reconstruction limited to n <= {MAX_MC_QUBITS}, got {n}")
    if block_size < 1 or blocks < 1:
        raise SamplingError(f"Need positive block size and count, got {block_size} and {blocks}")
    draws = haar_samples(block_size * blocks, seed)
    weights = XyPoolBasis(n, draws).coefficients(beta)
    return np.stack(
        [_weighted_sum(n, draws, weights, b * block_size, (b + 1) * block_size) / block_size for b in range(blocks)]
    )


def mc_reconstruct_xy(n: int, beta: float, samples: int, seed: int) -> tuple[np.ndarray, float]:
    """Monte-Carlo (1/N) sum_i a_beta(g_i) R(g_i)^{(x)n}; returns the estimate and its Frobenius error."""
    estimate = mc_block_estimates(n, beta, samples, 1, seed)[0]
    error = float(np.linalg.norm(estimate - xy_unitary_dense(n, beta)))
    logger.debug(f"MC reconstruction n={n} beta={beta} N={samples}: error {error:.4g}")
    return estimate, error


def mc_error_ratio(n: int, beta: float, samples: int, seed: int, factor: int = 4, repeats: int = 4) -> float:
    """RMS Frobenius error at ``factor * samples`` draws over the RMS error at ``samples`` draws.

    One stream of ``factor * repeats`` blocks yields ``factor * repeats`` small
    estimates and ``repeats`` large ones, each large estimate being the mean of
    ``factor`` consecutive blocks. Under 1/sqrt(N) convergence the ratio is
    close to 1/sqrt(factor).
    """
    blocks = mc_block_estimates(n, beta, samples, factor * repeats, seed)
    target = xy_unitary_dense(n, beta)
    dim = 2**n
    small = np.linalg.norm(blocks - target, axis=(1, 2))
    large = np.linalg.norm(blocks.reshape(repeats, factor, dim, dim).mean(axis=1) - target, axis=(1, 2))
    ratio = float(np.sqrt(np.mean(large**2) / np.mean(small**2)))
    logger.debug(f"MC error ratio n={n} beta={beta} N={samples} x{factor}: {ratio:.4g}")
    return ratio
