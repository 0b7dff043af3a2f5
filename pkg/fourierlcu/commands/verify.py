"""Acceptance checks against exact oracles."""

import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import typer
from loguru import logger
from rich.console import Console
from scipy.stats import binom, unitary_group

from fourierlcu.commands.middleware import handle_errors
from fourierlcu.constants import HEAVY_HEX_REFERENCE_EDGES
from fourierlcu.core.estimators import cvar, cvar_sandwich_check, metric_report
from fourierlcu.core.experiments import (
    PENALTY_MODES,
    XY_MODES,
    PenaltyEvaluator,
    instance_from_config,
    run_experiment_suite,
)
from fourierlcu.core.lcu_diagonal import build_diagonal_lcu, hamming_penalty_values, penalty_lcu
from fourierlcu.core.problems.dks import DksInstance, build_dks, build_mis, complement_split
from fourierlcu.core.problems.graphs import (
    erdos_renyi_graph,
    heavy_hex_lattice,
    heavy_hex_swap_graph,
    random_regular_graph,
)
from fourierlcu.core.problems.solver import solve_instance
from fourierlcu.core.qaoa import (
    QaoaSpec,
    cost_layer,
    euler_from_single_qubit,
    init_angle,
    run_variant,
    swap_network_cost_layer,
    unpermute_statevector,
    warm_start_circuit,
    warm_start_feasibility,
    warm_start_mixer,
    warm_start_state,
    xy_trotter_layer,
)
from fourierlcu.core.qpd import LcuChannel, ancilla_channel_apply, exact_channel_apply
from fourierlcu.core.samples import SampleSet
from fourierlcu.core.sim.circuit import run_circuit
from fourierlcu.core.sim.density import DensityMatrix
from fourierlcu.core.sim.statevector import Statevector, hamming_weights
from fourierlcu.core.su2.haar import haar_sample
from fourierlcu.core.su2.pool import XyLcuFamily
from fourierlcu.core.su2.sectors import spin_sectors
from fourierlcu.core.su2.xy import (
    coeff_general,
    coeff_xy,
    mc_error_ratio,
    mc_reconstruct_xy,
    xy_block_unitaries,
    xy_eigenphase_error,
)
from fourierlcu.core.su2.wigner import wigner_d_matrix
from fourierlcu.libs.utils.enums import ExperimentKind, Tail, Variant
from fourierlcu.types import ExperimentConfig, OptimizerConfig, PoolConfig
from fourierlcu.utils.console_messages import VerifyMessages

console = Console()

Result = tuple[bool, str]


@dataclass(frozen=True)
class Check:
    group: str
    name: str
    run: Callable[[], Result]

    @property
    def key(self) -> str:
        return f"{self.group}.{self.name}"


@dataclass(frozen=True)
class CheckOutcome:
    group: str
    name: str
    passed: bool
    detail: str
    seconds: float


def _random_state(n: int, rng: np.random.Generator) -> Statevector:
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return Statevector(n, amps / np.linalg.norm(amps))


def _weight_distribution(state: Statevector) -> np.ndarray:
    return np.bincount(hamming_weights(state.n), weights=np.abs(state.amps) ** 2, minlength=state.n + 1)


def _regular_instance(n: int, seed: int, k: Optional[int] = None):
    degree = 3 if n % 2 == 0 else 2
    return build_dks(random_regular_graph(n, degree, seed), n // 3 if k is None else k)


# lcu


def check_dft_reconstruction() -> Result:
    rng = np.random.default_rng(0)
    worst_error = worst_parseval = worst_excess = 0.0
    for _ in range(100):
        m = int(rng.integers(1, 13))
        f = rng.normal(size=m + 1) * rng.uniform(0.1, 5.0)
        lcu = build_diagonal_lcu(f, rng.uniform(-np.pi, np.pi))
        levels = np.arange(m + 1)
        worst_error = max(worst_error, float(np.abs(lcu.reconstruct(levels) - lcu.target(levels)).max()))
        worst_parseval = max(worst_parseval, abs(float(np.linalg.norm(lcu.coeffs)) - 1.0))
        worst_excess = max(worst_excess, lcu.gamma_cost - (m + 1))
    passed = worst_error <= 1e-9 and worst_parseval <= 1e-10 and worst_excess <= 1e-9
    return passed, f"error {worst_error:.1e}, parseval {worst_parseval:.1e}, Γ-(m+1) ≤ {worst_excess:.1e}"


def check_zero_angle() -> Result:
    gamma_cost = build_diagonal_lcu(hamming_penalty_values(12, 4), 0.0).gamma_cost
    return abs(gamma_cost - 1.0) <= 1e-12, f"Γ = {gamma_cost:.12g}"


def check_mis_indicator_bound() -> Result:
    mis = build_mis(random_regular_graph(8, 3, 5))
    bound = 1 + mis.graph.num_edges
    worst = max(mis.indicator_lcu(g).gamma_cost for g in np.linspace(-np.pi, np.pi, 25))
    return worst <= bound + 1e-9, f"max Γ {worst:.6g} ≤ {bound}"


def check_complement_split() -> Result:
    graph = erdos_renyi_graph(9, 0.7, 3)
    split = complement_split(graph)
    outcomes = np.arange(2**graph.n_nodes, dtype=np.int64)
    direct = build_dks(graph, 3).objective(outcomes)
    error = float(np.abs(split.values(outcomes) - direct).max())
    return error <= 1e-12, f"max error {error:.1e} over {outcomes.size} strings"


# channel


def check_channel_identity() -> Result:
    rng = np.random.default_rng(1)
    worst_exact = worst_ancilla = worst_unitary = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 6))
        lcu = build_diagonal_lcu(rng.normal(size=n + 1), rng.uniform(-np.pi, np.pi))
        channel = LcuChannel.from_diagonal(lcu, n)
        target = np.diag(lcu.target(hamming_weights(n)))
        worst_unitary = max(worst_unitary, float(np.abs(channel.unitary() - target).max()))
        rho = DensityMatrix.random_mixed(n, rng)
        expected = rho.evolve(target)
        worst_exact = max(worst_exact, exact_channel_apply(rho, channel).distance(expected))
        worst_ancilla = max(worst_ancilla, ancilla_channel_apply(rho, channel).distance(expected))
    passed = max(worst_exact, worst_ancilla, worst_unitary) <= 1e-8
    return passed, f"exact {worst_exact:.1e}, ancilla {worst_ancilla:.1e}, sum c_j V_j {worst_unitary:.1e}"


def check_rz_layer_branches() -> Result:
    n = 4
    lcu = build_diagonal_lcu(hamming_penalty_values(n, 1), 0.8)
    channel = LcuChannel.from_diagonal(lcu, n, rz_layer=True)
    error = float(np.abs(channel.unitary() - np.diag(lcu.target(hamming_weights(n)))).max())
    return error <= 1e-9, f"max error {error:.1e}"


# domination


def _penalty_cases(count: int = 50) -> list[tuple[DksInstance, float, float]]:
    """Fixed penalty-QAOA instances with 4..12 nodes and angles, shared by the domination and CVaR checks."""
    rng = np.random.default_rng(2)
    cases = []
    for trial in range(count):
        n = int(rng.integers(4, 13))
        instance = _regular_instance(n, seed=trial, k=int(rng.integers(1, n)))
        beta, gamma = rng.uniform(-np.pi, np.pi, size=2)
        cases.append((instance, float(beta), float(gamma)))
    return cases


def check_penalty_domination() -> Result:
    worst = min(PenaltyEvaluator(instance).domination_slack(beta, gamma) for instance, beta, gamma in _penalty_cases())
    return worst >= -1e-9, f"min Γ p~ - p = {worst:.2e} over 50 instances"


# su2


def check_xy_closed_form() -> Result:
    rng = np.random.default_rng(3)
    worst = 0.0
    for n in range(1, 6):
        beta = rng.uniform(-np.pi, np.pi)
        blocks = xy_block_unitaries(n, beta)
        for _ in range(5):
            g = haar_sample(int(rng.integers(2**31)))
            worst = max(worst, abs(coeff_xy(n, beta, g) - coeff_general(blocks, g, n)))
    return worst <= 1e-9, f"max |closed form - general| {worst:.1e}"


def check_xy_spectrum() -> Result:
    worst = max(xy_eigenphase_error(n, beta) for n in range(2, 7) for beta in (0.1, 0.37))
    return worst <= 1e-8, f"max eigenvalue gap {worst:.1e} for n=2..6, β ∈ {{0.1, 0.37}}"


def check_cost_bound() -> Result:
    bad = [
        n
        for n in range(1, 65)
        if spin_sectors(n).cost_bound() != (n + 1) * (n + 2) * (n + 3) // 6 or spin_sectors(n).dimension_total() != 2**n
    ]
    return not bad, f"n=1..64, failing {bad}" if bad else f"n=1..64, n=12 bound {spin_sectors(12).cost_bound()}"


def check_wigner_orthogonality() -> Result:
    worst = 0.0
    for two_j in range(17):
        eye = np.eye(two_j + 1)
        for theta in np.linspace(0.0, np.pi, 7):
            d = wigner_d_matrix(two_j / 2, theta)
            worst = max(worst, float(np.abs(d @ d.T - eye).max()))
    return worst <= 1e-9, f"max |d d^T - I| {worst:.1e} for j ≤ 8"


def check_mc_reconstruction() -> Result:
    errors = {n: mc_reconstruct_xy(n, 0.4, 1_000_000, seed=5)[1] for n in (1, 2, 3)}
    worst = max(errors.values())
    return worst <= 0.05, ", ".join(f"n={n}: {e:.3g}" for n, e in errors.items()) + " at N=10^6"


def check_mc_scaling() -> Result:
    ratios = [mc_error_ratio(3, 0.4, 100_000, seed=seed) for seed in (5, 6, 7)]
    passed = sum(ratio <= 0.6 for ratio in ratios) >= 2
    return passed, "error(4·10^5) / error(10^5): " + ", ".join(f"{r:.3f}" for r in ratios)


def check_pool_gamma() -> Result:
    worst_excess, worst = -np.inf, ""
    for n in (4, 8, 12):
        family = XyLcuFamily(n, pool_size=100, circuits=10, gamma_samples=20_000, seed=11)
        bound = spin_sectors(n).cost_bound()
        for beta in np.linspace(0.0, np.pi, 20):
            pool = family.pool(beta)
            excess = (pool.gamma_hat - bound) / max(pool.gamma_sigma, 1e-300)
            if excess > worst_excess:
                worst_excess = excess
                worst = f"n={n}, β={beta:.3f}: Γ̂ {pool.gamma_hat:.4g} ± {pool.gamma_sigma:.2g}, bound {bound}"
    return worst_excess <= 3.0, f"closest to bound: {worst}"


# qaoa


def check_warm_start_feasibility() -> Result:
    worst = 0.0
    for n, k in ((12, 4), (8, 3)):
        state = run_circuit(warm_start_circuit(n, init_angle(n, k)))
        worst = max(worst, abs(float(_weight_distribution(state)[k]) - float(binom.pmf(k, n, k / n))))
    large = warm_start_feasibility(106, 35)
    passed = worst <= 1e-6 and abs(large - 0.0822) <= 5e-4
    return passed, f"simulated vs binomial {worst:.1e} for (12,4), (8,3); n=106, k=35: {large:.4f}"


def check_trotter_conservation() -> Result:
    state = _random_state(6, np.random.default_rng(4))
    out = run_circuit(xy_trotter_layer(6, 0.37, 5), state)
    error = float(np.abs(_weight_distribution(out) - _weight_distribution(state)).max())
    return error <= 1e-9, f"max change in P(wt) {error:.1e}"


def check_lcu_sum_identity() -> Result:
    instance = _regular_instance(8, seed=6)
    params = {"beta": 0.41, "gamma": -0.73}
    lcu = penalty_lcu(instance, params["gamma"])
    branch_spec = QaoaSpec(instance, Variant.PENALTY_LCU, params)
    total = np.zeros(2**instance.n, dtype=complex)
    for j in lcu.active_branches:
        theta = float(lcu.thetas[j])
        total += lcu.coeffs[j] * np.exp(0.5j * theta * instance.n) * run_variant(branch_spec, theta).amps
    coherent = run_variant(QaoaSpec(instance, Variant.COHERENT_PENALTY, params))
    fidelity = abs(np.vdot(coherent.amps, total)) ** 2
    return abs(fidelity - 1.0) <= 1e-8, f"fidelity {fidelity:.12f}"


def check_euler_round_trip() -> Result:
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(1000):
        u = unitary_group.rvs(2, random_state=rng)
        angles, phi = euler_from_single_qubit(u)
        worst = max(worst, float(np.abs(np.exp(1j * phi) * angles.matrix() - u).max()))
    return worst <= 1e-9, f"max reconstruction error {worst:.1e}"


def check_warm_mixer_eigenstate() -> Result:
    state = warm_start_state(7, 2)
    theta_init = init_angle(7, 2)
    worst = max(
        1.0 - state.fidelity(run_circuit(warm_start_mixer(7, beta, theta_init), state))
        for beta in np.linspace(-np.pi, np.pi, 9)
    )
    return worst <= 1e-10, f"max infidelity {worst:.1e}"


def check_swap_network() -> Result:
    hh = heavy_hex_swap_graph(1, 1, 3)
    instance = build_dks(hh.graph, 4)
    state = _random_state(instance.n, np.random.default_rng(8))
    circuit, placement = swap_network_cost_layer(hh, instance.objective_qubo, 0.6)
    routed = unpermute_statevector(run_circuit(circuit, state), placement)
    direct = run_circuit(cost_layer(instance.objective_qubo, 0.6), state)
    fidelity = routed.fidelity(direct)
    return abs(fidelity - 1.0) <= 1e-9, f"n={instance.n}, {hh.graph.num_edges} logical edges, fidelity {fidelity:.12f}"


# problems


def check_heavy_hex_preset() -> Result:
    nodes = heavy_hex_lattice(5, 3).n_nodes
    hh = heavy_hex_swap_graph(5, 3, 3)
    edges = hh.graph.num_edges
    detail = f"{nodes} nodes, {edges} logical edges after {len(hh.swap_layers)} SWAP layers"
    if edges != HEAVY_HEX_REFERENCE_EDGES:
        detail += f"; reference {HEAVY_HEX_REFERENCE_EDGES} (edge-coloring order differs)"
    return nodes == 106 and edges == HEAVY_HEX_REFERENCE_EDGES, detail


# estimators


def check_cvar_examples() -> Result:
    values = np.array([1.0, 2.0, 3.0, 4.0])
    weights = np.full(4, 0.25)
    got = (
        cvar(values, weights, 0.5, Tail.UPPER),
        cvar(values, weights, 1.0, Tail.UPPER),
        cvar(values, weights, 1.0, Tail.LOWER),
        cvar(np.array([0.0, 10.0]), np.array([0.9, 0.1]), 0.25, Tail.UPPER),
    )
    expected = (3.5, 2.5, 2.5, 4.0)
    return bool(np.allclose(got, expected, atol=1e-12)), ", ".join(f"{v:g}" for v in got)


def check_cvar_sandwich() -> Result:
    worst = np.inf
    for instance, beta, gamma in _penalty_cases():
        evaluator = PenaltyEvaluator(instance)
        samples, lcu = evaluator.lcu(beta, gamma)
        lower, upper = cvar_sandwich_check(
            evaluator.coherent_probs(beta, gamma), samples.distribution(), lcu.gamma_cost, evaluator.penalty_values
        )
        worst = min(worst, lower, upper)
    return worst >= -1e-9, f"min slack {worst:.2e}"


def check_warm_start_report() -> Result:
    instance = _regular_instance(12, seed=10, k=4)
    probs = np.abs(warm_start_state(12, 4).amps) ** 2
    report = metric_report(SampleSet.from_probabilities(12, probs), instance, solve_instance(instance).value)
    return abs(report.p_feasible - 0.23845) <= 1e-4, f"p_feasible {report.p_feasible:.5f}"


# experiments


def check_experiment_modes() -> Result:
    config = ExperimentConfig(
        optimizer=OptimizerConfig(grid_points=3, refine_budget=20),
        pool=PoolConfig(pool_size=4000, circuits=20, gamma_samples=4000),
    )
    instance = instance_from_config(config.instance)
    penalty = run_experiment_suite(ExperimentKind.PENALTY, instance, config)
    xy = run_experiment_suite(ExperimentKind.XY, instance, config, optimum=penalty.optimum, penalty=penalty)
    modes = penalty.modes
    at_gamma3 = modes[2].extras["cvar_upper_at_gamma3"]
    gamma_gap = abs(modes[2].gamma_cost - penalty_lcu(instance, modes[1].params["gamma"]).gamma_cost)
    passed = (
        tuple(modes) == PENALTY_MODES
        and tuple(xy.modes) == XY_MODES
        and modes[4].report.cvar_upper >= at_gamma3 - 1e-9
        and gamma_gap <= 1e-9
    )
    return passed, (
        f"n={instance.n}: mode-4 CVaR {modes[4].report.cvar_upper:.4g} ≥ mode-2 {at_gamma3:.4g}, "
        f"|Γ₂ - ‖c‖₁²| {gamma_gap:.1e}, XY modes {list(xy.modes)}"
    )


CHECKS = [
    Check("lcu", "dft-reconstruction", check_dft_reconstruction),
    Check("lcu", "zero-angle", check_zero_angle),
    Check("lcu", "mis-indicator-bound", check_mis_indicator_bound),
    Check("lcu", "complement-split", check_complement_split),
    Check("channel", "identity", check_channel_identity),
    Check("channel", "rz-layer-branches", check_rz_layer_branches),
    Check("domination", "penalty-qaoa", check_penalty_domination),
    Check("su2", "xy-closed-form", check_xy_closed_form),
    Check("su2", "xy-spectrum", check_xy_spectrum),
    Check("su2", "cost-bound", check_cost_bound),
    Check("su2", "wigner-orthogonality", check_wigner_orthogonality),
    Check("su2", "mc-reconstruction", check_mc_reconstruction),
    Check("su2", "mc-scaling", check_mc_scaling),
    Check("su2", "pool-gamma", check_pool_gamma),
    Check("qaoa", "warm-start-feasibility", check_warm_start_feasibility),
    Check("qaoa", "trotter-conservation", check_trotter_conservation),
    Check("qaoa", "lcu-sum-identity", check_lcu_sum_identity),
    Check("qaoa", "euler-round-trip", check_euler_round_trip),
    Check("qaoa", "warm-mixer-eigenstate", check_warm_mixer_eigenstate),
    Check("qaoa", "swap-network", check_swap_network),
    Check("problems", "heavy-hex-preset", check_heavy_hex_preset),
    Check("estimators", "cvar-examples", check_cvar_examples),
    Check("estimators", "cvar-sandwich", check_cvar_sandwich),
    Check("estimators", "warm-start-report", check_warm_start_report),
    Check("experiments", "mode-regression", check_experiment_modes),
]


def select_checks(pattern: Optional[str] = None) -> list[Check]:
    if not pattern:
        return list(CHECKS)
    return [check for check in CHECKS if pattern in check.key]


def run_check(check: Check) -> CheckOutcome:
    start = time.perf_counter()
    try:
        passed, detail = check.run()
    except Exception as e:
        logger.exception(f"Check {check.key} raised")
        passed, detail = False, f"{type(e).__name__}: {e}"
    return CheckOutcome(check.group, check.name, bool(passed), detail, time.perf_counter() - start)


@handle_errors
def verify_command(pattern: Optional[str] = None) -> list[CheckOutcome]:
    """Run the selected checks; exits with code 1 when any fails."""
    checks = select_checks(pattern)
    if not checks:
        VerifyMessages.nothing_selected(pattern)
        raise typer.Exit(1)
    with console.status("Running checks..."):
        outcomes = [run_check(check) for check in checks]
    console.print(VerifyMessages.create_checks_table(outcomes))
    failed = sum(not o.passed for o in outcomes)
    console.print(VerifyMessages.create_summary_panel(len(outcomes) - failed, failed))
    if failed:
        raise typer.Exit(1)
    return outcomes
