"""Experiment orchestration for the penalty and XY-mixer variants.

Penalty modes:
  1. coherent circuit, maximize <H> over (beta, gamma)
  2. LCU at the mode-1 optimum, cost Gamma(gamma*)
  3. LCU, maximize CVaR_{1/Gamma(gamma)} over (beta, gamma)
  4. single branch, maximize CVaR_{1/Gamma_3} over (beta, gamma, theta)
  5. coherent circuit, maximize CVaR_{1/Gamma_3}

XY modes (p0 = warm-start feasibility, every objective adds 1e-5 P_opt):
  1. Trotterized coherent circuit, CVaR_{p0}
  2. LCU at the mode-1 optimum, cost Gamma_hat(beta*)
  3. LCU, CVaR_{p0/Gamma_hat(beta)} over (beta, gamma)
  4. single branch (gamma, vartheta, chi), CVaR_{p0/Gamma_3}
  5. coherent, CVaR_{p0/Gamma_3}
  6. coherent, CVaR_{1/Gamma_3} with Gamma_3 from penalty mode 3
  7. single branch plus warm-start mixer (beta, gamma, alpha, vartheta, chi),
     CVaR_{1/Gamma_3} of penalty mode 3, seeded from penalty mode 4
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from loguru import logger

from fourierlcu.constants import EXACT_EVALUATOR_MAX_QUBITS, MAX_STATEVECTOR_QUBITS, SECONDARY_WEIGHT
from fourierlcu.core.estimators import best_feasible_value, cvar, expectation, metric_report
from fourierlcu.core.lcu_diagonal import DiagonalLcu, penalty_lcu
from fourierlcu.core.problems.dks import DksInstance, build_dks
from fourierlcu.core.problems.graphs import erdos_renyi_graph, heavy_hex_swap_graph, random_regular_graph
from fourierlcu.core.problems.io import read_instance
from fourierlcu.core.problems.solver import solve_instance
from fourierlcu.core.qaoa import (
    PENALTY_VARIANTS,
    init_angle,
    single_branch_xy_initialization,
    warm_start_feasibility,
    warm_start_state,
    xy_trotter_layer,
)
from fourierlcu.core.qpd import sample_branch_mixture
from fourierlcu.core.samples import SampleSet
from fourierlcu.core.sim.circuit import run_circuit
from fourierlcu.core.sim.gates import euler_rotation, ry, rz
from fourierlcu.core.sim.statevector import Statevector, apply_product_rotations
from fourierlcu.core.su2.pool import Su2Selection, XyLcuFamily
from fourierlcu.core.vqopt import Evaluation, OptProblem, OptTrace, optimize
from fourierlcu.libs.utils.enums import Allocation, EvaluatorKind, ExperimentKind, GraphKind, Objective, Tail, Variant
from fourierlcu.libs.utils.errors import ProblemError
from fourierlcu.types import ExperimentConfig, InstanceConfig, MetricReport

PI = np.pi
BOUNDS = {
    "beta": (-PI, PI),
    "gamma": (-PI, PI),
    "theta": (0.0, 2 * PI),
    "alpha": (0.0, 2 * PI),
    "vartheta": (0.0, PI),
    "chi": (0.0, 4 * PI),
}
PENALTY_MODES = (1, 2, 3, 4, 5)
XY_MODES = (1, 2, 3, 4, 5, 6, 7)


def instance_from_config(cfg: InstanceConfig) -> DksInstance:
    if cfg.file is not None:
        return read_instance(cfg.file, k=cfg.k)
    if cfg.kind == GraphKind.REGULAR:
        graph = random_regular_graph(cfg.n, cfg.degree, cfg.seed)
    elif cfg.kind == GraphKind.ERDOS_RENYI:
        graph = erdos_renyi_graph(cfg.n, cfg.p, cfg.seed)
    else:
        graph = heavy_hex_swap_graph(cfg.rows, cfg.cols, cfg.swap_layers).graph
    return build_dks(graph, cfg.resolved_k(graph.n_nodes))


def resolve_evaluator(n: int, kind: Optional[EvaluatorKind]) -> EvaluatorKind:
    """Exact up to the exact-evaluator cap, sampled beyond it, refused beyond the simulator."""
    if n > MAX_STATEVECTOR_QUBITS:
        raise ProblemError(f"Experiments simulate at most {MAX_STATEVECTOR_QUBITS} qubits, instance has {n}")
    if kind is None:
        return EvaluatorKind.EXACT if n <= EXACT_EVALUATOR_MAX_QUBITS else EvaluatorKind.SAMPLED
    if kind == EvaluatorKind.EXACT and n > EXACT_EVALUATOR_MAX_QUBITS:
        raise ProblemError(f"Exact evaluation is limited to {EXACT_EVALUATOR_MAX_QUBITS} qubits, instance has {n}")
    return kind


def mode_seed(seed: int, kind: ExperimentKind, mode: int) -> int:
    """Fixed per (run, mode) so every evaluation of an optimizer run shares random numbers."""
    tag = 0 if kind == ExperimentKind.PENALTY else 1
    return int(np.random.SeedSequence([seed, tag, mode]).generate_state(1)[0])


class _Evaluator:
    """Shared state for both evaluators: warm start, objective tables and output mode."""

    def __init__(
        self,
        instance: DksInstance,
        kind: EvaluatorKind = EvaluatorKind.EXACT,
        shots: int = 1,
        allocation: Allocation = Allocation.PER_SHOT,
        workers: int = 1,
    ):
        self.instance = instance
        self.n = instance.n
        self.kind = kind
        self.shots = shots
        self.allocation = allocation
        self.workers = workers
        self.theta_init = init_angle(instance.n, instance.k)
        self.psi0 = warm_start_state(instance.n, instance.k).amps
        outcomes = np.arange(2**self.n, dtype=np.int64)
        self.objective_values = instance.objective(outcomes)
        self.penalty_values = instance.penalty_objective(outcomes)

    def mixer_rotation(self, beta: float) -> np.ndarray:
        return ry(self.theta_init) @ rz(beta) @ ry(-self.theta_init)

    def after_cost(self, gamma: float, values: np.ndarray) -> np.ndarray:
        return self.psi0 * np.exp(-1j * gamma * values)

    def emit(self, probs: np.ndarray, seed: int) -> SampleSet:
        probs = probs / probs.sum()
        if self.kind == EvaluatorKind.EXACT:
            return SampleSet.from_probabilities(self.n, probs)
        rng = np.random.default_rng(seed)
        return SampleSet.from_counts(self.n, rng.multinomial(self.shots, probs))

    def emit_mixture(self, branch_probs: np.ndarray, distributions: np.ndarray, seed: int) -> SampleSet:
        if self.kind == EvaluatorKind.EXACT:
            return SampleSet.from_probabilities(self.n, branch_probs @ distributions)
        return sample_branch_mixture(
            self.n, branch_probs, distributions, self.shots, seed, allocation=self.allocation, workers=self.workers
        )


class PenaltyEvaluator(_Evaluator):
    """Distributions of the penalty variants; the cost operator is applied as a diagonal phase."""

    def coherent_probs(self, beta: float, gamma: float) -> np.ndarray:
        amps = self.after_cost(gamma, self.penalty_values)
        out = apply_product_rotations(amps, self.n, self.mixer_rotation(beta)[None])[0]
        return np.abs(out) ** 2

    def branch_distributions(self, beta: float, gamma: float, thetas: np.ndarray) -> np.ndarray:
        """(B, 2**n): cost, R_Z(theta_j) layer, mixer."""
        amps = self.after_cost(gamma, self.objective_values)
        rotations = np.stack([self.mixer_rotation(beta) @ rz(t) for t in np.atleast_1d(thetas)])
        return np.abs(apply_product_rotations(amps, self.n, rotations)) ** 2

    def coherent(self, beta: float, gamma: float, seed: int = 0) -> SampleSet:
        return self.emit(self.coherent_probs(beta, gamma), seed)

    def branch(self, beta: float, gamma: float, theta: float, seed: int = 0) -> SampleSet:
        return self.emit(self.branch_distributions(beta, gamma, np.array([theta]))[0], seed)

    def lcu(self, beta: float, gamma: float, seed: int = 0) -> tuple[SampleSet, DiagonalLcu]:
        decomposition = penalty_lcu(self.instance, gamma)
        active = decomposition.active_branches
        dists = self.branch_distributions(beta, gamma, decomposition.thetas[active])
        return self.emit_mixture(decomposition.branch_probs[active], dists, seed), decomposition

    def domination_slack(self, beta: float, gamma: float) -> float:
        """min_x Gamma p~_x - p_x with exact distributions."""
        decomposition = penalty_lcu(self.instance, gamma)
        active = decomposition.active_branches
        dists = self.branch_distributions(beta, gamma, decomposition.thetas[active])
        p_tilde = decomposition.branch_probs[active] @ dists
        return float(np.min(decomposition.gamma_cost * p_tilde - self.coherent_probs(beta, gamma)))


class XyEvaluator(_Evaluator):
    """Distributions of the XY-mixer variants."""

    def __init__(self, instance: DksInstance, family: Optional[XyLcuFamily] = None, trotter_steps: int = 5, **kwargs):
        super().__init__(instance, **kwargs)
        self.family = family
        self.trotter_steps = trotter_steps

    def coherent_probs(self, beta: float, gamma: float) -> np.ndarray:
        state = Statevector(self.n, self.after_cost(gamma, self.objective_values))
        out = run_circuit(xy_trotter_layer(self.n, beta, self.trotter_steps), state)
        return np.abs(out.amps) ** 2

    def coherent(self, beta: float, gamma: float, seed: int = 0) -> SampleSet:
        return self.emit(self.coherent_probs(beta, gamma), seed)

    def single_branch_probs(
        self, gamma: float, vartheta: float, chi: float, alpha: float = 0.0, beta: Optional[float] = None
    ) -> np.ndarray:
        rotation = euler_rotation(alpha, vartheta, chi)
        if beta is not None:
            rotation = self.mixer_rotation(beta) @ rotation
        amps = self.after_cost(gamma, self.objective_values)
        return np.abs(apply_product_rotations(amps, self.n, rotation[None])[0]) ** 2

    def single_branch(self, gamma, vartheta, chi, alpha=0.0, beta=None, seed: int = 0) -> SampleSet:
        return self.emit(self.single_branch_probs(gamma, vartheta, chi, alpha, beta), seed)

    def _selection(self, beta: float) -> Su2Selection:
        if self.family is None:
            raise ProblemError("XY LCU evaluation needs a Haar pool")
        return self.family.select(beta)

    def lcu(self, beta: float, gamma: float, seed: int = 0) -> tuple[SampleSet, Su2Selection]:
        selection = self._selection(beta)
        amps = self.after_cost(gamma, self.objective_values)
        dists = np.abs(apply_product_rotations(amps, self.n, selection.samples.rotations())) ** 2
        uniform = np.full(len(selection), 1.0 / len(selection))
        return self.emit_mixture(uniform, dists, seed), selection

    def surrogate_domination_slack(self, beta: float, gamma: float) -> float:
        """min_x Gamma_hat p~_x - |<x|U_hat|psi>|^2 for the pool surrogate U_hat."""
        selection = self._selection(beta)
        amps = self.after_cost(gamma, self.objective_values)
        states = apply_product_rotations(amps, self.n, selection.samples.rotations())
        coeffs = np.sqrt(selection.gamma_hat) * np.exp(1j * selection.phases) / len(selection)
        p = np.abs(coeffs @ states) ** 2
        p_tilde = (np.abs(states) ** 2).mean(axis=0)
        return float(np.min(selection.gamma_hat * p_tilde - p))


@dataclass
class ModeResult:
    kind: ExperimentKind
    mode: int
    variant: Variant
    params: dict[str, float]
    report: MetricReport
    distribution: SampleSet
    trace: Optional[OptTrace] = None
    reference: Optional[SampleSet] = None
    extras: dict[str, float] = field(default_factory=dict)

    @property
    def gamma_cost(self) -> float:
        return self.report.gamma


@dataclass
class SuiteResult:
    kind: ExperimentKind
    instance: DksInstance
    optimum: float
    evaluator: EvaluatorKind
    modes: dict[int, ModeResult] = field(default_factory=dict)


class _Runner:
    """Runs modes in order; later modes read Gamma and parameters from earlier ones."""

    def __init__(
        self, kind: ExperimentKind, instance: DksInstance, config: ExperimentConfig, optimum: float, pool: bool = True
    ):
        self.kind = kind
        self.instance = instance
        self.config = config
        self.optimum = optimum
        self.evaluator_kind = resolve_evaluator(instance.n, config.evaluator)
        self.result = SuiteResult(kind, instance, optimum, self.evaluator_kind)
        outcomes = np.arange(2**instance.n, dtype=np.int64)
        self.optimal_mask = instance.is_feasible(outcomes) & (instance.objective(outcomes) >= optimum - 1e-9)
        common = dict(
            kind=self.evaluator_kind, shots=config.shots, allocation=config.allocation, workers=config.workers
        )
        if kind == ExperimentKind.PENALTY:
            self.evaluator = PenaltyEvaluator(instance, **common)
        else:
            family = None
            if pool:
                family = XyLcuFamily(
                    instance.n,
                    config.pool.pool_size,
                    config.pool.circuits,
                    config.pool.gamma_samples,
                    config.pool.seed,
                    workers=config.workers,
                )
            self.evaluator = XyEvaluator(instance, family=family, trotter_steps=config.trotter_steps, **common)
        self.p0 = warm_start_feasibility(instance.n, instance.k)

    def seed(self, mode: int) -> int:
        return mode_seed(self.config.seed, self.kind, mode)

    def score(self, samples: SampleSet, eta: Optional[float], secondary: bool) -> Evaluation:
        """<H> when ``eta`` is None, otherwise upper CVaR_eta; optionally plus 1e-5 P_opt."""
        values = self.instance.penalty_objective(samples.outcomes)
        if eta is None:
            value = expectation(values, samples.weights)
        else:
            value = cvar(values, samples.weights, min(1.0, eta), Tail.UPPER, keys=samples.outcomes)
        p_opt = float(samples.weights[self.optimal_mask[samples.outcomes]].sum() / samples.total_weight)
        if secondary:
            value += SECONDARY_WEIGHT * p_opt
        return Evaluation(value, best_feasible_value(samples, self.instance), {"p_optimal": p_opt})

    def problem(self, names: tuple[str, ...], objective: Callable[[dict], Evaluation]) -> OptProblem:
        opt = self.config.optimizer
        lower = [BOUNDS[name][0] for name in names]
        upper = [BOUNDS[name][1] for name in names]
        problem = OptProblem(names, lower, upper, objective, grid_points=opt.grid_points, xatol=opt.xatol)
        problem.budget = problem.grid_size + opt.refine_budget
        problem.workers = self.config.workers
        return problem

    def finish(
        self,
        mode: int,
        variant: Variant,
        params: dict[str, float],
        samples: SampleSet,
        gamma: float,
        eta: float,
        trace: Optional[OptTrace] = None,
        reference: Optional[SampleSet] = None,
        extras: Optional[dict] = None,
        label: Optional[str] = None,
    ) -> ModeResult:
        label = label or f"{self.kind.value}-{mode}"
        report = metric_report(samples, self.instance, self.optimum, gamma=gamma, eta=min(1.0, eta), label=label)
        if trace is not None and trace.best_sample is not None:
            report.best_feasible = max(report.best_feasible or -np.inf, trace.best_sample)
        result = ModeResult(self.kind, mode, variant, params, report, samples, trace, reference, extras or {})
        self.result.modes[mode] = result
        logger.debug(f"{report.label}: <H>={report.expectation:.6g} Gamma={gamma:.6g} CVaR+={report.cvar_upper:.6g}")
        return result


def _run_penalty_modes(runner: _Runner, modes: tuple[int, ...]) -> SuiteResult:
    ev: PenaltyEvaluator = runner.evaluator
    out = runner.result.modes

    def need(mode: int):
        if mode not in out:
            PENALTY_RUNNERS[mode](runner, ev)

    for mode in modes:
        for dep in PENALTY_DEPENDENCIES[mode]:
            need(dep)
        need(mode)
    # compare the frozen LCU with the single-branch optimum at the same risk level
    if 2 in out and 3 in out:
        gamma3 = out[3].gamma_cost
        values = runner.instance.penalty_objective(out[2].distribution.outcomes)
        out[2].extras["cvar_upper_at_gamma3"] = cvar(
            values, out[2].distribution.weights, min(1.0, 1.0 / gamma3), Tail.UPPER, keys=out[2].distribution.outcomes
        )
    runner.result.modes = {m: out[m] for m in sorted(out) if m in modes}
    return runner.result


def _penalty_mode1(runner: _Runner, ev: PenaltyEvaluator):
    seed = runner.seed(1)
    trace = optimize(
        runner.problem(
            ("beta", "gamma"), lambda p: runner.score(ev.coherent(p["beta"], p["gamma"], seed), None, False)
        )
    )
    params = trace.best_params
    samples = ev.coherent(params["beta"], params["gamma"], seed)
    runner.finish(1, Variant.COHERENT_PENALTY, params, samples, 1.0, 1.0, trace)


def _penalty_mode2(runner: _Runner, ev: PenaltyEvaluator):
    params = dict(runner.result.modes[1].params)
    samples, decomposition = ev.lcu(params["beta"], params["gamma"], runner.seed(2))
    extras = {}
    if runner.evaluator_kind == EvaluatorKind.EXACT:
        extras["domination_slack"] = ev.domination_slack(params["beta"], params["gamma"])
    gamma = decomposition.gamma_cost
    runner.finish(
        2, Variant.PENALTY_LCU, params, samples, gamma, 1.0 / gamma,
        reference=runner.result.modes[1].distribution, extras=extras,
    )


def _penalty_mode3(runner: _Runner, ev: PenaltyEvaluator):
    seed = runner.seed(3)

    def objective(p: dict) -> Evaluation:
        samples, decomposition = ev.lcu(p["beta"], p["gamma"], seed)
        result = runner.score(samples, 1.0 / decomposition.gamma_cost, False)
        return Evaluation(result.value, result.best_sample, {**result.extras, "gamma_cost": decomposition.gamma_cost})

    trace = optimize(runner.problem(("beta", "gamma"), objective))
    params = trace.best_params
    samples, decomposition = ev.lcu(params["beta"], params["gamma"], seed)
    gamma = decomposition.gamma_cost
    runner.finish(3, Variant.PENALTY_LCU, params, samples, gamma, 1.0 / gamma, trace)


def _penalty_mode4(runner: _Runner, ev: PenaltyEvaluator):
    seed = runner.seed(4)
    gamma3 = runner.result.modes[3].gamma_cost
    beta1, gamma1 = runner.result.modes[1].params["beta"], runner.result.modes[1].params["gamma"]
    decomposition = penalty_lcu(runner.instance, gamma1)
    starts = [(beta1, gamma1, float(decomposition.thetas[j])) for j in decomposition.active_branches]
    problem = runner.problem(
        ("beta", "gamma", "theta"),
        lambda p: runner.score(ev.branch(p["beta"], p["gamma"], p["theta"], seed), 1.0 / gamma3, False),
    )
    problem.budget += len(starts)
    trace = optimize(problem, starts=starts)
    params = trace.best_params
    samples = ev.branch(params["beta"], params["gamma"], params["theta"], seed)
    runner.finish(4, Variant.SINGLE_BRANCH_PENALTY, params, samples, gamma3, 1.0 / gamma3, trace)


def _penalty_mode5(runner: _Runner, ev: PenaltyEvaluator):
    seed = runner.seed(5)
    gamma3 = runner.result.modes[3].gamma_cost
    trace = optimize(
        runner.problem(
            ("beta", "gamma"), lambda p: runner.score(ev.coherent(p["beta"], p["gamma"], seed), 1.0 / gamma3, False)
        )
    )
    params = trace.best_params
    samples = ev.coherent(params["beta"], params["gamma"], seed)
    runner.finish(5, Variant.COHERENT_PENALTY, params, samples, gamma3, 1.0 / gamma3, trace)


PENALTY_RUNNERS = {1: _penalty_mode1, 2: _penalty_mode2, 3: _penalty_mode3, 4: _penalty_mode4, 5: _penalty_mode5}
PENALTY_DEPENDENCIES = {1: (), 2: (1,), 3: (), 4: (1, 3), 5: (3,)}


def _run_xy_modes(runner: _Runner, modes: tuple[int, ...], penalty: Optional[SuiteResult]) -> SuiteResult:
    ev: XyEvaluator = runner.evaluator
    out = runner.result.modes
    p0 = runner.p0

    def coherent_mode(mode: int, eta: float, gamma: float):
        seed = runner.seed(mode)
        trace = optimize(
            runner.problem(
                ("beta", "gamma"), lambda p: runner.score(ev.coherent(p["beta"], p["gamma"], seed), eta, True)
            )
        )
        params = trace.best_params
        samples = ev.coherent(params["beta"], params["gamma"], seed)
        runner.finish(mode, Variant.COHERENT_XY_TROTTER, params, samples, gamma, eta, trace)

    def mode1():
        coherent_mode(1, p0, 1.0)

    def mode2():
        params = dict(out[1].params)
        samples, selection = ev.lcu(params["beta"], params["gamma"], runner.seed(2))
        extras = {"gamma_sigma": selection.gamma_sigma}
        if runner.evaluator_kind == EvaluatorKind.EXACT:
            extras["surrogate_domination_slack"] = ev.surrogate_domination_slack(params["beta"], params["gamma"])
        runner.finish(
            2, Variant.XY_LCU, params, samples, selection.gamma_hat, p0 / selection.gamma_hat,
            reference=out[1].distribution, extras=extras,
        )

    def mode3():
        seed = runner.seed(3)

        def objective(p: dict) -> Evaluation:
            samples, selection = ev.lcu(p["beta"], p["gamma"], seed)
            result = runner.score(samples, p0 / selection.gamma_hat, True)
            return Evaluation(result.value, result.best_sample, {**result.extras, "gamma_cost": selection.gamma_hat})

        trace = optimize(runner.problem(("beta", "gamma"), objective))
        params = trace.best_params
        samples, selection = ev.lcu(params["beta"], params["gamma"], seed)
        runner.finish(
            3, Variant.XY_LCU, params, samples, selection.gamma_hat, p0 / selection.gamma_hat, trace,
            extras={"gamma_sigma": selection.gamma_sigma},
        )

    def mode4():
        seed = runner.seed(4)
        gamma3 = out[3].gamma_cost
        eta = p0 / gamma3
        trace = optimize(
            runner.problem(
                ("gamma", "vartheta", "chi"),
                lambda p: runner.score(ev.single_branch(p["gamma"], p["vartheta"], p["chi"], seed=seed), eta, True),
            )
        )
        params = trace.best_params
        samples = ev.single_branch(params["gamma"], params["vartheta"], params["chi"], seed=seed)
        runner.finish(4, Variant.SINGLE_BRANCH_XY, params, samples, gamma3, eta, trace)

    def mode5():
        gamma3 = out[3].gamma_cost
        coherent_mode(5, p0 / gamma3, gamma3)

    def penalty_reference(needed: tuple[int, ...]) -> SuiteResult:
        nonlocal penalty
        if penalty is None or any(m not in penalty.modes for m in needed):
            logger.debug("Running penalty modes for the XY cross-reference")
            penalty = run_experiment_suite(
                ExperimentKind.PENALTY, runner.instance, runner.config, modes=needed, optimum=runner.optimum
            )
        return penalty

    def mode6():
        gamma3p = penalty_reference((3,)).modes[3].gamma_cost
        coherent_mode(6, 1.0 / gamma3p, gamma3p)

    def mode7():
        ref = penalty_reference((3, 4))
        gamma3p = ref.modes[3].gamma_cost
        p4 = ref.modes[4].params
        init = single_branch_xy_initialization(p4["beta"], p4["theta"], ev.theta_init)
        start = (0.0, p4["gamma"], 0.0, init.theta, init.chi)
        seed = runner.seed(7)
        eta = 1.0 / gamma3p

        def objective(p: dict) -> Evaluation:
            samples = ev.single_branch(p["gamma"], p["vartheta"], p["chi"], p["alpha"], p["beta"], seed=seed)
            return runner.score(samples, eta, True)

        problem = runner.problem(("beta", "gamma", "alpha", "vartheta", "chi"), objective)
        problem.budget += 1
        trace = optimize(problem, starts=[start])
        params = trace.best_params
        samples = ev.single_branch(
            params["gamma"], params["vartheta"], params["chi"], params["alpha"], params["beta"], seed=seed
        )
        runner.finish(7, Variant.SINGLE_BRANCH_XY, params, samples, gamma3p, eta, trace, extras={
            "seed_vartheta": init.theta, "seed_chi": init.chi,
        })

    runners = {1: mode1, 2: mode2, 3: mode3, 4: mode4, 5: mode5, 6: mode6, 7: mode7}
    dependencies = {1: (), 2: (1,), 3: (), 4: (3,), 5: (3,), 6: (), 7: ()}
    for mode in modes:
        for dep in dependencies[mode]:
            if dep not in out:
                runners[dep]()
        if mode not in out:
            runners[mode]()
    runner.result.modes = {m: out[m] for m in sorted(out) if m in modes}
    return runner.result


def run_experiment_suite(
    kind: ExperimentKind,
    instance: DksInstance,
    config: ExperimentConfig,
    modes: Optional[tuple[int, ...]] = None,
    optimum: Optional[float] = None,
    penalty: Optional[SuiteResult] = None,
) -> SuiteResult:
    """Run the requested modes (all by default) in order.

    Modes needed by a requested mode run as well but are only reported when
    requested. ``penalty`` supplies penalty modes 3 and 4 for XY modes 6 and 7.
    """
    available = PENALTY_MODES if kind == ExperimentKind.PENALTY else XY_MODES
    modes = tuple(modes or config.modes or available)
    unknown = [m for m in modes if m not in available]
    if unknown:
        raise ProblemError(f"Unknown {kind.value} mode(s): {unknown}")
    resolve_evaluator(instance.n, config.evaluator)
    if optimum is None:
        optimum = solve_instance(instance).value
    runner = _Runner(kind, instance, config, optimum, pool=bool(set(modes) & {2, 3, 4, 5}))
    logger.debug(f"{kind.value} suite on n={instance.n}, k={instance.k}: modes {modes}, {runner.evaluator_kind.value}")
    if kind == ExperimentKind.PENALTY:
        return _run_penalty_modes(runner, modes)
    return _run_xy_modes(runner, modes, penalty)


VARIANT_PARAMETERS = {
    Variant.COHERENT_PENALTY: ("beta", "gamma"),
    Variant.PENALTY_LCU: ("beta", "gamma"),
    Variant.SINGLE_BRANCH_PENALTY: ("beta", "gamma", "theta"),
    Variant.COHERENT_XY_TROTTER: ("beta", "gamma"),
    Variant.XY_LCU: ("beta", "gamma"),
    Variant.SINGLE_BRANCH_XY: ("gamma", "vartheta", "chi"),
}


def optimize_variant(
    instance: DksInstance,
    config: ExperimentConfig,
    variant: Variant,
    objective: Objective = Objective.EXPECTATION,
    eta: Optional[float] = None,
    optimum: Optional[float] = None,
) -> ModeResult:
    """Grid search and refinement of one variant under one objective.

    CVaR objectives use ``eta`` when given, otherwise 1/Gamma of the evaluated
    configuration (1 for circuits without a sampling overhead).
    """
    kind = ExperimentKind.PENALTY if variant in PENALTY_VARIANTS else ExperimentKind.XY
    resolve_evaluator(instance.n, config.evaluator)
    if optimum is None:
        optimum = solve_instance(instance).value
    runner = _Runner(kind, instance, config, optimum, pool=variant == Variant.XY_LCU)
    ev = runner.evaluator
    seed = runner.seed(0)

    def draw(p: dict) -> tuple[SampleSet, float]:
        if variant in (Variant.COHERENT_PENALTY, Variant.COHERENT_XY_TROTTER):
            return ev.coherent(p["beta"], p["gamma"], seed), 1.0
        if variant == Variant.PENALTY_LCU:
            samples, decomposition = ev.lcu(p["beta"], p["gamma"], seed)
            return samples, decomposition.gamma_cost
        if variant == Variant.XY_LCU:
            samples, selection = ev.lcu(p["beta"], p["gamma"], seed)
            return samples, selection.gamma_hat
        if variant == Variant.SINGLE_BRANCH_PENALTY:
            return ev.branch(p["beta"], p["gamma"], p["theta"], seed), 1.0
        return ev.single_branch(p["gamma"], p["vartheta"], p["chi"], seed=seed), 1.0

    def risk(gamma_cost: float) -> Optional[float]:
        if objective == Objective.EXPECTATION:
            return None
        return eta if eta is not None else 1.0 / gamma_cost

    def evaluate(p: dict) -> Evaluation:
        samples, gamma_cost = draw(p)
        result = runner.score(samples, risk(gamma_cost), objective == Objective.CVAR_POPT)
        return Evaluation(result.value, result.best_sample, {**result.extras, "gamma_cost": gamma_cost})

    trace = optimize(runner.problem(VARIANT_PARAMETERS[variant], evaluate))
    params = trace.best_params
    samples, gamma_cost = draw(params)
    level = risk(gamma_cost)
    return runner.finish(
        0, variant, params, samples, gamma_cost, 1.0 if level is None else level, trace,
        label=f"{variant.value}-{objective.value}",
    )
