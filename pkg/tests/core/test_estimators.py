"""
Tests for CVaR and the metric report.
"""

import numpy as np
import pytest

from fourierlcu.core.estimators import (
    best_feasible_value,
    cvar,
    cvar_sandwich_check,
    expectation,
    metric_report,
    p_optimal,
    sample_cvar,
    value_histogram,
)
from fourierlcu.core.experiments import PenaltyEvaluator
from fourierlcu.core.problems.dks import build_dks
from fourierlcu.core.problems.graphs import random_regular_graph
from fourierlcu.core.problems.solver import solve_instance
from fourierlcu.core.qaoa import warm_start_state
from fourierlcu.core.samples import SampleSet
from fourierlcu.libs.utils.enums import Tail
from fourierlcu.libs.utils.errors import SamplingError


@pytest.fixture
def instance():
    return build_dks(random_regular_graph(8, 3, seed=1), 3)


def test_cvar_examples():
    """Test upper and lower tails with a fractional boundary atom"""
    values = np.array([1.0, 2.0, 3.0, 4.0])
    weights = np.full(4, 0.25)
    assert cvar(values, weights, 0.5) == pytest.approx(3.5)
    assert cvar(values, weights, 1.0) == pytest.approx(2.5)
    assert cvar(values, weights, 0.5, Tail.LOWER) == pytest.approx(1.5)
    assert cvar(np.array([0.0, 10.0]), np.array([0.9, 0.1]), 0.25) == pytest.approx(4.0)


def test_cvar_unnormalized_weights():
    """Test that counts work as weights"""
    assert cvar(np.array([1.0, 2.0]), np.array([30.0, 10.0]), 0.5) == pytest.approx(1.5)


def test_cvar_validation():
    """Test alpha range and zero weight"""
    with pytest.raises(SamplingError):
        cvar(np.array([1.0]), np.array([1.0]), 0.0)
    with pytest.raises(SamplingError):
        cvar(np.array([1.0]), np.array([0.0]), 0.5)
    with pytest.raises(SamplingError):
        expectation(np.array([1.0]), np.array([0.0]))


def test_sample_cvar():
    """Test CVaR over per-record values of a sample set"""
    samples = SampleSet(2, [0, 1, 2], [0, 0, 1], [1.0, 1.0, 2.0])
    assert sample_cvar(samples, np.array([5.0, 1.0, 3.0]), 0.25) == pytest.approx(5.0)


def test_warm_start_report():
    """Test the metric report of the warm start"""
    instance = build_dks(random_regular_graph(12, 3, seed=10), 4)
    probs = np.abs(warm_start_state(12, 4).amps) ** 2
    report = metric_report(SampleSet.from_probabilities(12, probs), instance, solve_instance(instance).value)
    assert report.p_feasible == pytest.approx(0.23845, abs=1e-4)
    assert 0.0 < report.p_optimal <= report.p_feasible
    assert report.cvar_lower == pytest.approx(report.expectation)
    assert report.cvar_upper == pytest.approx(report.expectation)
    assert report.eta == 1.0


def test_best_feasible_and_p_optimal(instance):
    """Test the best sampled feasible value and the optimal mass"""
    optimum = solve_instance(instance)
    probs = np.zeros(2**instance.n)
    probs[optimum.solutions[0]] = 0.5
    probs[0] = 0.5
    samples = SampleSet.from_probabilities(instance.n, probs)
    assert best_feasible_value(samples, instance) == optimum.value
    assert p_optimal(probs, instance, optimum.value) == pytest.approx(0.5)
    empty = SampleSet.from_probabilities(instance.n, np.eye(2**instance.n)[0])
    assert best_feasible_value(empty, instance) is None


def test_value_histogram(instance):
    """Test histogram masses and the reference bound column"""
    evaluator = PenaltyEvaluator(instance)
    coherent = evaluator.coherent(0.4, 0.3)
    lcu_samples, lcu = evaluator.lcu(0.4, 0.3)
    rows = value_histogram(lcu_samples, instance, reference=coherent, gamma=lcu.gamma_cost)
    assert sum(r.mass for r in rows) == pytest.approx(1.0)
    assert [r.value for r in rows] == sorted(r.value for r in rows)
    # the LCU distribution dominates the coherent one scaled by 1/Gamma in every bin
    assert all(r.mass >= r.reference - 1e-9 for r in rows)


def test_cvar_sandwich(instance):
    """Test lower CVaR <= E[f] <= upper CVaR for the coherent distribution"""
    evaluator = PenaltyEvaluator(instance)
    for beta, gamma in [(0.4, 0.3), (-1.2, 2.0), (2.5, -0.7)]:
        samples, lcu = evaluator.lcu(beta, gamma)
        lower, upper = cvar_sandwich_check(
            evaluator.coherent_probs(beta, gamma), samples.distribution(), lcu.gamma_cost, evaluator.penalty_values
        )
        assert lower >= -1e-9
        assert upper >= -1e-9
