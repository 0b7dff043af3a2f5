"""
Tests for the experiment suites.
"""

import numpy as np
import pytest

from fourierlcu.core.experiments import (
    BOUNDS,
    PENALTY_MODES,
    XY_MODES,
    instance_from_config,
    mode_seed,
    optimize_variant,
    resolve_evaluator,
    run_experiment_suite,
)
from fourierlcu.core.lcu_diagonal import penalty_lcu
from fourierlcu.libs.utils.enums import EvaluatorKind, ExperimentKind, Objective, Variant
from fourierlcu.libs.utils.errors import ProblemError
from fourierlcu.types import ExperimentConfig, InstanceConfig, OptimizerConfig, PoolConfig


def small_config(**kwargs) -> ExperimentConfig:
    return ExperimentConfig(
        instance=InstanceConfig(n=6, degree=3, k=2, seed=3),
        optimizer=OptimizerConfig(grid_points=3, refine_budget=10),
        pool=PoolConfig(pool_size=400, circuits=20, gamma_samples=400),
        **kwargs,
    )


@pytest.fixture(scope="module")
def config():
    return small_config()


@pytest.fixture(scope="module")
def instance(config):
    return instance_from_config(config.instance)


@pytest.fixture(scope="module")
def penalty_suite(config, instance):
    return run_experiment_suite(ExperimentKind.PENALTY, instance, config)


def test_instance_from_config(instance):
    """Test the generated instance and the default k"""
    assert instance.n == 6
    assert instance.k == 2
    assert instance.graph.num_edges == 9
    assert instance_from_config(InstanceConfig(n=9, degree=2)).k == 3


def test_resolve_evaluator():
    """Test the automatic choice and the qubit caps"""
    assert resolve_evaluator(6, None) == EvaluatorKind.EXACT
    assert resolve_evaluator(15, None) == EvaluatorKind.SAMPLED
    assert resolve_evaluator(6, EvaluatorKind.SAMPLED) == EvaluatorKind.SAMPLED
    with pytest.raises(ProblemError):
        resolve_evaluator(15, EvaluatorKind.EXACT)
    with pytest.raises(ProblemError):
        resolve_evaluator(17, None)


def test_mode_seed():
    """Test that seeds are fixed per run and mode"""
    assert mode_seed(1, ExperimentKind.PENALTY, 3) == mode_seed(1, ExperimentKind.PENALTY, 3)
    assert mode_seed(1, ExperimentKind.PENALTY, 3) != mode_seed(1, ExperimentKind.PENALTY, 4)
    assert mode_seed(1, ExperimentKind.PENALTY, 3) != mode_seed(1, ExperimentKind.XY, 3)


def test_penalty_suite_modes(penalty_suite):
    """Test that every penalty mode is reported in order"""
    assert list(penalty_suite.modes) == list(PENALTY_MODES)
    assert penalty_suite.evaluator == EvaluatorKind.EXACT
    for result in penalty_suite.modes.values():
        assert result.report.p_optimal <= result.report.p_feasible + 1e-9
        for name, value in result.params.items():
            low, high = BOUNDS[name]
            assert low <= value <= high


def test_penalty_lcu_at_coherent_optimum(penalty_suite):
    """Test that mode 2 reuses the mode-1 angles and dominates the coherent distribution"""
    modes = penalty_suite.modes
    assert modes[2].params == modes[1].params
    assert modes[1].gamma_cost == 1.0
    assert modes[2].gamma_cost >= 1.0 - 1e-12
    assert modes[2].report.eta == pytest.approx(1.0 / modes[2].gamma_cost)
    assert modes[2].extras["domination_slack"] >= -1e-9
    assert "cvar_upper_at_gamma3" in modes[2].extras
    assert modes[2].reference is modes[1].distribution


def test_penalty_mode_relations(instance, penalty_suite):
    """Test that mode 2 costs ||c(gamma*)||_1^2 and the single branch beats it at the mode-3 risk level"""
    modes = penalty_suite.modes
    expected = penalty_lcu(instance, modes[1].params["gamma"]).gamma_cost
    assert modes[2].gamma_cost == pytest.approx(expected, abs=1e-9)
    assert modes[4].report.cvar_upper >= modes[2].extras["cvar_upper_at_gamma3"] - 1e-9


def test_penalty_modes_share_gamma3(penalty_suite):
    """Test that modes 4 and 5 use the risk level of mode 3"""
    modes = penalty_suite.modes
    gamma3 = modes[3].gamma_cost
    assert modes[4].gamma_cost == gamma3
    assert modes[5].gamma_cost == gamma3
    assert modes[5].report.eta == pytest.approx(min(1.0, 1.0 / gamma3))
    assert set(modes[4].params) == {"beta", "gamma", "theta"}


def test_penalty_trace_budget(penalty_suite):
    """Test the evaluation budget of the coherent optimization"""
    trace = penalty_suite.modes[1].trace
    assert 9 < len(trace) <= 9 + 10
    assert trace.best_value == max(entry.value for entry in trace.entries)


def test_requested_modes_only(config, instance, penalty_suite):
    """Test that dependencies run but are not reported"""
    suite = run_experiment_suite(ExperimentKind.PENALTY, instance, config, modes=(2,), optimum=penalty_suite.optimum)
    assert list(suite.modes) == [2]
    assert suite.modes[2].params == penalty_suite.modes[1].params


def test_unknown_mode(config, instance):
    """Test that an unknown mode is refused"""
    with pytest.raises(ProblemError):
        run_experiment_suite(ExperimentKind.PENALTY, instance, config, modes=(6,), optimum=1.0)


def test_xy_modes(config, instance, penalty_suite):
    """Test the Trotterized optimum and the XY LCU evaluated at it"""
    suite = run_experiment_suite(ExperimentKind.XY, instance, config, modes=(1, 2), optimum=penalty_suite.optimum)
    assert list(suite.modes) == [1, 2]
    assert suite.modes[1].variant == Variant.COHERENT_XY_TROTTER
    assert suite.modes[2].variant == Variant.XY_LCU
    assert suite.modes[2].params == suite.modes[1].params
    assert suite.modes[2].gamma_cost > 0
    assert suite.modes[2].extras["gamma_sigma"] >= 0
    assert "surrogate_domination_slack" in suite.modes[2].extras


def test_sampled_evaluator(instance):
    """Test shot counts as sample weights"""
    config = small_config(evaluator=EvaluatorKind.SAMPLED, shots=200)
    suite = run_experiment_suite(ExperimentKind.PENALTY, instance, config, modes=(1,))
    assert suite.evaluator == EvaluatorKind.SAMPLED
    assert suite.modes[1].distribution.total_weight == pytest.approx(200)


def test_optimize_variant(config, instance, penalty_suite):
    """Test a single-variant optimization with a CVaR objective"""
    result = optimize_variant(instance, config, Variant.PENALTY_LCU, Objective.CVAR, optimum=penalty_suite.optimum)
    assert result.mode == 0
    assert result.report.label == "penalty-lcu-cvar"
    assert result.report.eta == pytest.approx(min(1.0, 1.0 / result.gamma_cost))
    assert set(result.params) == {"beta", "gamma"}
    fixed = optimize_variant(
        instance, config, Variant.COHERENT_PENALTY, Objective.CVAR, eta=0.5, optimum=penalty_suite.optimum
    )
    assert fixed.report.eta == 0.5
    assert np.isfinite(fixed.report.cvar_upper)


def test_all_xy_modes(config, instance, penalty_suite):
    """Test every XY mode, with modes 6 and 7 taking Gamma and the seed point from the penalty suite"""
    suite = run_experiment_suite(
        ExperimentKind.XY, instance, config, optimum=penalty_suite.optimum, penalty=penalty_suite
    )
    modes = suite.modes
    assert list(modes) == list(XY_MODES)
    gamma3 = modes[3].gamma_cost
    assert modes[4].gamma_cost == gamma3
    assert modes[5].gamma_cost == gamma3
    gamma3_penalty = penalty_suite.modes[3].gamma_cost
    assert modes[6].gamma_cost == gamma3_penalty
    assert modes[7].gamma_cost == gamma3_penalty
    assert modes[7].variant == Variant.SINGLE_BRANCH_XY
    assert set(modes[7].params) == {"beta", "gamma", "alpha", "vartheta", "chi"}
    assert {"seed_vartheta", "seed_chi"} <= set(modes[7].extras)
    # the Euler-angle seed point is evaluated right after the grid
    seed_entry = modes[7].trace.entries[3**5]
    assert seed_entry.params["gamma"] == penalty_suite.modes[4].params["gamma"]
    assert seed_entry.params["vartheta"] == pytest.approx(modes[7].extras["seed_vartheta"])
    for result in modes.values():
        assert 0.0 <= result.report.p_feasible <= 1.0 + 1e-9
