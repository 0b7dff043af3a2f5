"""QAOA circuit builders for the cardinality-constrained experiments.

Every variant starts from the warm-start product state and applies the cost
operator of the objective. Variants differ in how the constraint enters: a
penalty inside the cost operator, a sampled R_Z branch of its diagonal LCU,
a Trotterized XY mixer, or a sampled Euler-rotation branch of the XY mixer.
"""

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

import numpy as np
from loguru import logger
from scipy.stats import binom

from fourierlcu.constants import TROTTER_STEPS
from fourierlcu.core.problems.dks import DksInstance, IsingModel, QuboModel, ising_from_qubo
from fourierlcu.core.problems.graphs import HeavyHexSwapGraph
from fourierlcu.core.sim.circuit import Circuit, run_circuit
from fourierlcu.core.sim.gates import GateOp, ry, rz
from fourierlcu.core.sim.statevector import Statevector, basis_bits
from fourierlcu.core.su2.haar import EulerAngles
from fourierlcu.libs.utils.enums import GateKind, Variant
from fourierlcu.libs.utils.errors import DecompositionError, GateError, ProblemError

Branch = Union[float, EulerAngles, None]

PENALTY_VARIANTS = {Variant.COHERENT_PENALTY, Variant.PENALTY_LCU, Variant.SINGLE_BRANCH_PENALTY}
XY_VARIANTS = {Variant.COHERENT_XY_TROTTER, Variant.XY_LCU, Variant.SINGLE_BRANCH_XY}


def init_angle(n: int, k: int) -> float:
    """2 arcsin(sqrt(k/n)); R_Y of this angle puts weight k/n on |1>."""
    if not 0 <= k <= n:
        raise ProblemError(f"k={k} outside 0..{n}")
    return float(2.0 * np.arcsin(np.sqrt(k / n)))


def warm_start_circuit(n: int, theta_init: float) -> Circuit:
    return Circuit(n, [GateOp(GateKind.RY, (q,), theta_init) for q in range(n)], name="warm-start")


def warm_start_state(n: int, k: int) -> Statevector:
    if k in (0, n):
        logger.warning(f"Warm start with k={k} on {n} qubits is a computational basis state")
    theta = init_angle(n, k)
    single = [np.cos(theta / 2), np.sin(theta / 2)]
    return Statevector.product([single] * n)


def warm_start_feasibility(n: int, k: int) -> float:
    """P(wt = k) for the warm-start state; binomial pmf, usable far beyond simulator sizes."""
    if not 0 <= k <= n:
        raise ProblemError(f"k={k} outside 0..{n}")
    return float(binom.pmf(k, n, k / n))


def cost_layer(model: Union[QuboModel, IsingModel], gamma: float) -> Circuit:
    """exp(-i gamma H) up to global phase via R_Z (linear) and R_ZZ (quadratic) gates."""
    ising = ising_from_qubo(model) if isinstance(model, QuboModel) else model
    ops = [GateOp(GateKind.RZ, (q,), 2.0 * gamma * h) for q, h in enumerate(ising.h) if h != 0.0]
    ops += [GateOp(GateKind.RZZ, pair, 2.0 * gamma * w) for pair, w in sorted(ising.couplings.items()) if w != 0.0]
    return Circuit(ising.n, ops, name="cost")


def diagonal_cost_layer(qubo: QuboModel, gamma: float, label: str = "cost") -> Circuit:
    """exp(-i gamma H) as a single diagonal gate, constant included."""
    return Circuit(qubo.n, [GateOp(GateKind.DIAGONAL, (), float(gamma), function=qubo.values, label=label)])


def warm_start_mixer(n: int, beta: float, theta_init: float) -> Circuit:
    """Per qubit, R_Y(-theta_init) then R_Z(beta) then R_Y(theta_init).

    The warm-start state is an eigenstate of this mixer for every beta.
    """
    ops = []
    for q in range(n):
        ops += [
            GateOp(GateKind.RY, (q,), -theta_init),
            GateOp(GateKind.RZ, (q,), beta),
            GateOp(GateKind.RY, (q,), theta_init),
        ]
    return Circuit(n, ops, name="mixer")


def rz_branch_layer(n: int, theta: float) -> Circuit:
    return Circuit(n, [GateOp(GateKind.RZ, (q,), theta) for q in range(n)], name="rz-branch")


def euler_layer(n: int, g: EulerAngles) -> Circuit:
    """R_Z(alpha) R_Y(theta) R_Z(chi) on every qubit; R_Z(chi) acts first."""
    ops = []
    for q in range(n):
        ops += [
            GateOp(GateKind.RZ, (q,), g.chi),
            GateOp(GateKind.RY, (q,), g.theta),
            GateOp(GateKind.RZ, (q,), g.alpha),
        ]
    return Circuit(n, ops, name="euler-branch")


def xy_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def xy_trotter_layer(n: int, beta: float, steps: int = TROTTER_STEPS) -> Circuit:
    """Second-order Trotter circuit for exp(-i beta (J_x^2 + J_y^2)), up to global phase.

    Each step of length d applies the pair terms exp(-2i (d/2) (XX + YY)) over
    lexicographic pairs, then again in reverse order.
    """
    if steps < 1:
        raise GateError(f"Trotter steps must be positive, got {steps}")
    pairs = xy_pairs(n)
    half = 2.0 * beta / steps  # XY(4 * d/2)
    forward = [GateOp(GateKind.XY, pair, half) for pair in pairs]
    ops = []
    for _ in range(steps):
        ops += forward + forward[::-1]
    return Circuit(n, ops, name="xy-trotter")


def euler_from_single_qubit(u: np.ndarray, atol: float = 1e-10) -> tuple[EulerAngles, float]:
    """ZYZ angles and phase phi with u = e^{i phi} R_Z(alpha) R_Y(theta) R_Z(chi).

    theta is in [0, pi]. Where only alpha + chi (theta = 0) or alpha - chi
    (theta = pi) is determined, chi = 0.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or not np.allclose(u.conj().T @ u, np.eye(2), atol=atol):
        raise DecompositionError("Expected a 2x2 unitary")
    v = u * np.exp(-0.5j * np.angle(np.linalg.det(u)))
    theta = 2.0 * np.arctan2(abs(v[1, 0]), abs(v[0, 0]))
    if abs(v[1, 0]) <= 1e-12:
        alpha, chi = 2.0 * np.angle(v[1, 1]), 0.0
    elif abs(v[0, 0]) <= 1e-12:
        alpha, chi = 2.0 * np.angle(v[1, 0]), 0.0
    else:
        alpha = np.angle(v[1, 1]) + np.angle(v[1, 0])
        chi = np.angle(v[1, 1]) - np.angle(v[1, 0])
    angles = EulerAngles.wrapped(alpha, min(theta, np.pi), chi)
    phi = float(np.angle(np.trace(angles.matrix().conj().T @ u)))
    return angles, phi


def single_branch_penalty_unitary(beta: float, theta: float, theta_init: float) -> np.ndarray:
    """Per-qubit unitary of the single-branch penalty circuit after the cost layer."""
    return ry(theta_init) @ rz(beta) @ ry(-theta_init) @ rz(theta)


def single_branch_xy_initialization(beta: float, theta: float, theta_init: float) -> EulerAngles:
    """Euler angles of a single XY branch that reproduce a single penalty branch.

    The trailing R_Z(alpha) commutes with measurement and is dropped (alpha = 0).
    """
    angles, _ = euler_from_single_qubit(single_branch_penalty_unitary(beta, theta, theta_init))
    return EulerAngles(0.0, angles.theta, angles.chi)


@dataclass
class QaoaSpec:
    """Depth-p QAOA variant with named parameters.

    Parameter names: beta, gamma (lists of length ``depth`` for the coherent
    variants), theta (single-branch penalty), alpha, vartheta, chi
    (single-branch XY). A single-branch XY variant carrying ``beta`` appends a
    warm-start mixer after the Euler layer.
    """

    instance: DksInstance
    variant: Variant
    params: Mapping[str, Union[float, Sequence[float]]] = field(default_factory=dict)
    theta_init: Optional[float] = None
    depth: int = 1
    trotter_steps: int = TROTTER_STEPS
    diagonal_cost: bool = False

    def __post_init__(self):
        if self.theta_init is None:
            self.theta_init = init_angle(self.instance.n, self.instance.k)
        if self.depth < 1:
            raise GateError(f"Depth must be positive, got {self.depth}")
        if self.depth > 1 and self.variant not in (Variant.COHERENT_PENALTY, Variant.COHERENT_XY_TROTTER):
            raise GateError(f"{self.variant.value} is defined for depth 1 only")

    def value(self, name: str, layer: int = 0) -> float:
        if name not in self.params:
            raise GateError(f"{self.variant.value} needs parameter '{name}'")
        raw = self.params[name]
        if isinstance(raw, (list, tuple, np.ndarray)):
            if len(raw) != self.depth:
                raise GateError(f"Parameter '{name}' needs {self.depth} values, got {len(raw)}")
            return float(raw[layer])
        return float(raw)


def _cost(spec: QaoaSpec, gamma: float, with_penalty: bool) -> Circuit:
    qubo = spec.instance.qubo if with_penalty else spec.instance.objective_qubo
    if spec.diagonal_cost:
        return diagonal_cost_layer(qubo, gamma)
    return cost_layer(qubo, gamma)


def build_variant_circuit(spec: QaoaSpec, branch: Branch = None) -> Circuit:
    """Full circuit of ``spec.variant``; LCU variants take the sampled branch.

    ``branch`` is the R_Z angle theta_j for penalty-lcu and the Euler angles
    for xy-lcu.
    """
    n = spec.instance.n
    circuit = warm_start_circuit(n, spec.theta_init)
    variant = spec.variant

    if variant in (Variant.COHERENT_PENALTY, Variant.COHERENT_XY_TROTTER):
        for layer in range(spec.depth):
            gamma = spec.value("gamma", layer)
            beta = spec.value("beta", layer)
            if variant == Variant.COHERENT_PENALTY:
                circuit = circuit.compose(_cost(spec, gamma, with_penalty=True))
                circuit = circuit.compose(warm_start_mixer(n, beta, spec.theta_init))
            else:
                circuit = circuit.compose(_cost(spec, gamma, with_penalty=False))
                circuit = circuit.compose(xy_trotter_layer(n, beta, spec.trotter_steps))
        circuit.name = variant.value
        return circuit

    circuit = circuit.compose(_cost(spec, spec.value("gamma"), with_penalty=False))
    if variant in (Variant.PENALTY_LCU, Variant.SINGLE_BRANCH_PENALTY):
        if variant == Variant.PENALTY_LCU:
            if branch is None or isinstance(branch, EulerAngles):
                raise GateError("penalty-lcu needs the branch angle theta_j")
            theta = float(branch)
        else:
            theta = spec.value("theta")
        circuit = circuit.compose(rz_branch_layer(n, theta))
        circuit = circuit.compose(warm_start_mixer(n, spec.value("beta"), spec.theta_init))
    elif variant == Variant.XY_LCU:
        if not isinstance(branch, EulerAngles):
            raise GateError("xy-lcu needs the branch Euler angles")
        circuit = circuit.compose(euler_layer(n, branch))
    elif variant == Variant.SINGLE_BRANCH_XY:
        alpha = spec.value("alpha") if "alpha" in spec.params else 0.0
        g = EulerAngles(alpha, spec.value("vartheta"), spec.value("chi"))
        circuit = circuit.compose(euler_layer(n, g))
        if "beta" in spec.params:
            circuit = circuit.compose(warm_start_mixer(n, spec.value("beta"), spec.theta_init))
    else:
        raise GateError(f"Unknown variant {variant}")
    circuit.name = variant.value
    return circuit


def run_variant(spec: QaoaSpec, branch: Branch = None) -> Statevector:
    return run_circuit(build_variant_circuit(spec, branch))


def swap_network_cost_layer(hh: HeavyHexSwapGraph, model: Union[QuboModel, IsingModel], gamma: float) -> tuple[Circuit, np.ndarray]:
    """Cost layer on a heavy-hex device with SWAP layers between interaction rounds.

    Circuit qubits are physical nodes; logical qubit i starts on node i. Each
    coupling is applied at the first stage where its logical pair is
    physically adjacent. Returns the circuit and the final placement
    (``placement[p]`` = logical qubit on node p).
    """
    ising = ising_from_qubo(model) if isinstance(model, QuboModel) else model
    n = hh.physical.n_nodes
    if ising.n != n:
        raise ProblemError(f"Model has {ising.n} variables, device has {n} nodes")
    ops = [GateOp(GateKind.RZ, (q,), 2.0 * gamma * h) for q, h in enumerate(ising.h) if h != 0.0]
    pending = {pair: w for pair, w in ising.couplings.items() if w != 0.0}
    stages = len(hh.placements)
    for stage in range(stages):
        place = hh.placements[stage]
        for p, q in hh.physical.edge_pairs():
            key = (int(min(place[p], place[q])), int(max(place[p], place[q])))
            if key in pending:
                ops.append(GateOp(GateKind.RZZ, (p, q), 2.0 * gamma * pending.pop(key)))
        if not pending:
            break
        if stage < stages - 1:
            ops += [GateOp(GateKind.SWAP, pair) for pair in hh.swap_layers[stage]]
    if pending:
        raise ProblemError(f"{len(pending)} coupling(s) never become physically adjacent")
    final = hh.placements[stage]
    return Circuit(n, ops, name="swap-network-cost"), np.asarray(final).copy()


def unpermute_statevector(state: Statevector, placement: np.ndarray) -> Statevector:
    """Reorder amplitudes so that bit i is logical qubit i again."""
    placement = np.asarray(placement)
    if sorted(placement.tolist()) != list(range(state.n)):
        raise ProblemError("Placement is not a permutation of the qubits")
    bits = basis_bits(state.n)
    logical_index = (bits.astype(np.int64) << placement[None, :].astype(np.int64)).sum(axis=1)
    amps = np.empty_like(state.amps)
    amps[logical_index] = state.amps
    return Statevector(state.n, amps)


def lcu_branch_statevectors(spec: QaoaSpec, thetas: Sequence[float]) -> np.ndarray:
    """(B, 2**n) penalty-lcu states, one per R_Z branch angle."""
    return np.stack([run_variant(spec, float(t)).amps for t in thetas])
