"""Quasi-probability implementations of an LCU U = sum_j c_j V_j.

Two paths are provided: the exact ancilla-based channel decomposition into
Kraus pairs (small n, verification) and the ancilla-free sampler that runs
branch V_j with probability q_j = |c_j| / ||c||_1.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from loguru import logger
from scipy.linalg import block_diag

from fourierlcu.core.lcu_diagonal import DiagonalLcu, hamming_weight_function, lcu_basis_unitary_as_phase
from fourierlcu.core.samples import SampleSet
from fourierlcu.core.sim.circuit import Circuit, circuit_unitary, run_circuit
from fourierlcu.core.sim.density import DensityMatrix
from fourierlcu.core.sim.gates import GateOp, hadamard, phase
from fourierlcu.core.sim.statevector import Statevector, apply_product_rotations
from fourierlcu.core.su2.pool import Su2Selection
from fourierlcu.libs.utils.enums import Allocation, GateKind
from fourierlcu.libs.utils.errors import DimensionError, SamplingError
from fourierlcu.libs.utils.parallel import chunk_sizes, map_ordered, spawn_generators

MAX_CHANNEL_QUBITS = 6


@dataclass
class LcuChannel:
    """Branch circuits V_j with complex coefficients c_j.

    When every branch is a product of identical single-qubit rotations,
    ``rotations`` holds them as a (B, 2, 2) stack for batched simulation.
    """

    n: int
    branches: list[Circuit]
    coeffs: np.ndarray
    rotations: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if len(self.branches) != len(self.coeffs):
            raise DimensionError("One coefficient per branch is required")
        if self.gamma_cost < 1 - 1e-9:
            logger.warning(f"LCU cost {self.gamma_cost:.6g} below 1; coefficients do not describe a unitary")

    @property
    def gamma_cost(self) -> float:
        return float(np.abs(self.coeffs).sum() ** 2)

    @property
    def branch_probs(self) -> np.ndarray:
        mags = np.abs(self.coeffs)
        return mags / mags.sum()

    @classmethod
    def from_diagonal(cls, lcu: DiagonalLcu, n: int, g=hamming_weight_function, rz_layer: bool = False) -> "LcuChannel":
        """Branches V(theta_j) for the active DFT modes.

        With ``rz_layer`` (g must be the Hamming weight) each branch is a layer of
        R_Z(theta_j) gates and its coefficient absorbs the global phase e^{i theta_j n/2}.
        """
        branches, coeffs = [], []
        for j in lcu.active_branches:
            theta = float(lcu.thetas[j])
            if rz_layer:
                circuit = Circuit(n, [GateOp(GateKind.RZ, (q,), theta) for q in range(n)], name=f"rz-{j}")
                coeffs.append(lcu.coeffs[j] * np.exp(0.5j * theta * n))
            else:
                fn = lcu_basis_unitary_as_phase(lcu, int(j), g)
                circuit = Circuit(n, [GateOp(GateKind.DIAGONAL, (), -1.0, function=fn, label=f"V{j}")])
                coeffs.append(lcu.coeffs[j])
            branches.append(circuit)
        return cls(n, branches, np.asarray(coeffs))

    @classmethod
    def from_su2_selection(cls, selection: Su2Selection) -> "LcuChannel":
        """Finite surrogate sum_i (alpha_hat e^{i psi_i} / M) R(g_i)^{(x)n} of the XY mixer."""
        n = selection.n
        alpha_hat = np.sqrt(selection.gamma_hat)
        coeffs = alpha_hat * np.exp(1j * selection.phases) / len(selection)
        branches = []
        for g in selection.branches:
            ops = []
            for q in range(n):
                ops += [
                    GateOp(GateKind.RZ, (q,), g.chi),
                    GateOp(GateKind.RY, (q,), g.theta),
                    GateOp(GateKind.RZ, (q,), g.alpha),
                ]
            branches.append(Circuit(n, ops))
        return cls(n, branches, coeffs, rotations=selection.samples.rotations())

    def branch_matrices(self) -> list[np.ndarray]:
        return [circuit_unitary(b) for b in self.branches]

    def unitary(self) -> np.ndarray:
        return sum(c * v for c, v in zip(self.coeffs, self.branch_matrices()))

    def branch_states(self, state: Statevector) -> np.ndarray:
        """(B, 2**n) amplitudes of V_j applied to ``state``."""
        if self.rotations is not None:
            return apply_product_rotations(state.amps, self.n, self.rotations)
        return np.stack([run_circuit(b, state).amps for b in self.branches])


@dataclass
class KrausPair:
    """K^{+/-} = (e^{i phi/2} V_j +/- e^{-i phi/2} V_k) / 2 for one cross term."""

    j: int
    k: int
    phi_jk: float
    v_j: np.ndarray
    v_k: np.ndarray

    @property
    def k_plus(self) -> np.ndarray:
        return 0.5 * (np.exp(0.5j * self.phi_jk) * self.v_j + np.exp(-0.5j * self.phi_jk) * self.v_k)

    @property
    def k_minus(self) -> np.ndarray:
        return 0.5 * (np.exp(0.5j * self.phi_jk) * self.v_j - np.exp(-0.5j * self.phi_jk) * self.v_k)

    def completeness(self) -> np.ndarray:
        kp, km = self.k_plus, self.k_minus
        return kp.conj().T @ kp + km.conj().T @ km


def _check_channel_size(n: int):
    if n > MAX_CHANNEL_QUBITS:
        raise DimensionError(f"Exact channel evaluation limited to n <= {MAX_CHANNEL_QUBITS}, got {n}")


def cross_term_channel(rho: DensityMatrix, pair: KrausPair) -> DensityMatrix:
    """Phi^+(rho) - Phi^-(rho), which equals (e^{i phi} V_j rho V_k^dag + h.c.) / 2."""
    _check_channel_size(rho.n)
    if pair.v_j.shape != rho.mat.shape or pair.v_k.shape != rho.mat.shape:
        raise DimensionError("Kraus pair and density matrix dimensions differ")
    kp, km = pair.k_plus, pair.k_minus
    return DensityMatrix(rho.n, kp @ rho.mat @ kp.conj().T - km @ rho.mat @ km.conj().T)


def ancilla_cross_term(rho: DensityMatrix, pair: KrausPair) -> DensityMatrix:
    """Cross term from an explicit ancilla circuit: H, P(phi), controlled V_j, anti-controlled V_k, H.

    The ancilla is the most significant qubit; the result is rho_0 - rho_1 over
    the two ancilla outcomes.
    """
    _check_channel_size(rho.n)
    dim = 2**rho.n
    eye = np.eye(dim)
    ancilla_zero = np.zeros((2, 2))
    ancilla_zero[0, 0] = 1.0
    full = DensityMatrix(rho.n + 1, np.kron(ancilla_zero, rho.mat))
    full = full.evolve(np.kron(hadamard(), eye))
    full = full.evolve(np.kron(phase(pair.phi_jk), eye))
    full = full.evolve(block_diag(pair.v_k, pair.v_j))
    full = full.evolve(np.kron(hadamard(), eye))
    return DensityMatrix(rho.n, full.mat[:dim, :dim] - full.mat[dim:, dim:])


def _apply_channel(rho: DensityMatrix, channel: LcuChannel, cross_term) -> DensityMatrix:
    _check_channel_size(rho.n)
    if channel.n != rho.n:
        raise DimensionError(f"Channel acts on {channel.n} qubits, state has {rho.n}")
    mats = channel.branch_matrices()
    mags = np.abs(channel.coeffs)
    phis = np.angle(channel.coeffs)
    out = np.zeros_like(rho.mat)
    for j, v in enumerate(mats):
        out += mags[j] ** 2 * (v @ rho.mat @ v.conj().T)
    for j in range(len(mats)):
        for k in range(j):
            pair = KrausPair(j, k, phis[j] - phis[k], mats[j], mats[k])
            out += 2 * mags[j] * mags[k] * cross_term(rho, pair).mat
    return DensityMatrix(rho.n, out)


def exact_channel_apply(rho: DensityMatrix, channel: LcuChannel) -> DensityMatrix:
    """sum_j |c_j|^2 V_j rho V_j^dag + sum_{k<j} 2|c_j||c_k| (Phi^+ - Phi^-)(rho)."""
    return _apply_channel(rho, channel, cross_term_channel)


def ancilla_channel_apply(rho: DensityMatrix, channel: LcuChannel) -> DensityMatrix:
    """Same decomposition with every cross term simulated through the ancilla circuit."""
    return _apply_channel(rho, channel, ancilla_cross_term)


def qpd_expectation(rho: DensityMatrix, channel: LcuChannel, observable: np.ndarray) -> float:
    """tr(O U(rho)) assembled from the signed ancilla-circuit terms."""
    return float(np.real(np.trace(observable @ ancilla_channel_apply(rho, channel).mat)))


def _prepared(channel: LcuChannel, prepare: Optional[Circuit]) -> Statevector:
    return run_circuit(prepare) if prepare is not None else Statevector.zero(channel.n)


def _after(states: np.ndarray, n: int, suffix: Optional[Circuit]) -> np.ndarray:
    if suffix is None:
        return states
    return np.stack([run_circuit(suffix, Statevector(n, s)).amps for s in states])


def branch_distributions(channel: LcuChannel, prepare: Optional[Circuit] = None, suffix: Optional[Circuit] = None) -> np.ndarray:
    """(B, 2**n) outcome distributions of prepare -> V_j -> suffix."""
    states = _after(channel.branch_states(_prepared(channel, prepare)), channel.n, suffix)
    return np.abs(states) ** 2


def lcu_distribution(channel: LcuChannel, prepare: Optional[Circuit] = None, suffix: Optional[Circuit] = None) -> np.ndarray:
    """p~_x = sum_j q_j |<x| suffix V_j |psi>|^2."""
    return channel.branch_probs @ branch_distributions(channel, prepare, suffix)


def coherent_distribution(channel: LcuChannel, prepare: Optional[Circuit] = None, suffix: Optional[Circuit] = None) -> np.ndarray:
    """p_x = |<x| suffix (sum_j c_j V_j) |psi>|^2."""
    states = channel.branch_states(_prepared(channel, prepare))
    combined = channel.coeffs @ states
    combined = _after(combined[None, :], channel.n, suffix)[0]
    return np.abs(combined) ** 2


def domination_check(
    n: int, channel: LcuChannel, prepare: Optional[Circuit] = None, suffix: Optional[Circuit] = None
) -> float:
    """min over x of Gamma * p~_x - p_x; non-negative up to rounding."""
    if channel.n != n:
        raise DimensionError(f"Channel acts on {channel.n} qubits, expected {n}")
    p_tilde = lcu_distribution(channel, prepare, suffix)
    p = coherent_distribution(channel, prepare, suffix)
    return float(np.min(channel.gamma_cost * p_tilde - p))


def largest_remainder(shots: int, probs: np.ndarray) -> np.ndarray:
    """Integer allocation of ``shots`` proportional to ``probs``."""
    exact = shots * np.asarray(probs, dtype=float)
    counts = np.floor(exact).astype(np.int64)
    remainder = shots - int(counts.sum())
    if remainder > 0:
        # ties broken by branch index
        order = np.lexsort((np.arange(len(exact)), -(exact - counts)))
        counts[order[:remainder]] += 1
    return counts


def sample_branch_mixture(
    n: int,
    branch_probs: np.ndarray,
    distributions: np.ndarray,
    shots: int,
    seed: int,
    allocation: Allocation = Allocation.PER_SHOT,
    workers: int = 1,
) -> SampleSet:
    """Draw ``shots`` outcomes: branch j with probability q_j, then x from branch j's distribution.

    Shots are split into one part per worker, each with its own spawned stream.
    """
    if shots < 1:
        raise SamplingError(f"shots must be positive, got {shots}")
    parts = chunk_sizes(shots, -(-shots // max(1, workers)))
    rngs = spawn_generators(seed, len(parts))

    def run_part(item) -> SampleSet:
        rng, part_shots = item
        if allocation == Allocation.DETERMINISTIC:
            per_branch = largest_remainder(part_shots, branch_probs)
        else:
            per_branch = rng.multinomial(part_shots, branch_probs)
        pieces = [SampleSet(n, [], [], [])]
        for j in np.flatnonzero(per_branch):
            dist = distributions[j] / distributions[j].sum()
            pieces.append(SampleSet.from_counts(n, rng.multinomial(per_branch[j], dist), branch=int(j)))
        return SampleSet.concat(pieces)

    merged = SampleSet.concat(map_ordered(run_part, list(zip(rngs, parts)), workers=workers)).merged()
    merged.metadata.update({"allocation": allocation.value, "workers": max(1, workers), "shots": shots})
    return merged


def ancilla_free_sample(
    channel: LcuChannel,
    prepare: Optional[Circuit],
    shots: int,
    seed: int,
    suffix: Optional[Circuit] = None,
    allocation: Allocation = Allocation.PER_SHOT,
    workers: int = 1,
) -> SampleSet:
    """Randomized LCU sampling; records keep the branch index of every outcome."""
    return sample_branch_mixture(
        channel.n,
        channel.branch_probs,
        branch_distributions(channel, prepare, suffix),
        shots,
        seed,
        allocation=allocation,
        workers=workers,
    )
