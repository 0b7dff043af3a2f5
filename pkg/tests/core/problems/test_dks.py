"""
Tests for the densest-k-subgraph and independent-set models.
"""

import numpy as np
import pytest

from fourierlcu.core.problems.dks import (
    QuboModel,
    build_dks,
    build_mis,
    complement_split,
    ising_from_qubo,
    penalty_factor,
)
from fourierlcu.core.problems.graphs import Graph, erdos_renyi_graph, random_regular_graph
from fourierlcu.core.sim.statevector import hamming_weights
from fourierlcu.libs.utils.errors import ProblemError


@pytest.fixture
def instance():
    return build_dks(random_regular_graph(8, 3, seed=4), 3)


def test_penalty_factor(instance):
    """Test lambda = 1 + maximum weighted degree"""
    assert instance.lam == 4.0
    assert penalty_factor(Graph(3, ((0, 1, 2.5),))) == 3.5


def test_qubo_matches_penalized_objective(instance):
    """Test objective QUBO plus penalty QUBO on every string"""
    outcomes = np.arange(2**instance.n)
    assert np.allclose(instance.qubo.values(outcomes), instance.penalty_objective(outcomes))


def test_ising_matches_qubo(instance):
    """Test the x = (1 - z) / 2 substitution"""
    outcomes = np.arange(2**instance.n)
    assert np.allclose(ising_from_qubo(instance.qubo).values(outcomes), instance.qubo.values(outcomes))


def test_objective_counts_internal_edges():
    """Test the densest-k objective on a path"""
    path = build_dks(Graph.from_pairs(4, [(0, 1), (1, 2), (2, 3)]), 2)
    assert path.objective(np.array([0b0011, 0b0101, 0b1111])).tolist() == [1.0, 0.0, 3.0]


def test_feasibility(instance):
    """Test that feasibility is Hamming weight k"""
    outcomes = np.arange(2**instance.n)
    assert np.array_equal(instance.is_feasible(outcomes), hamming_weights(instance.n) == 3)
    outcomes = outcomes[instance.is_feasible(outcomes)]
    assert np.allclose(instance.penalty_objective(outcomes), instance.objective(outcomes))


def test_penalty_dominates_gains(instance):
    """Test that any infeasible string scores below the feasible optimum"""
    outcomes = np.arange(2**instance.n)
    values = instance.penalty_objective(outcomes)
    feasible = instance.is_feasible(outcomes)
    assert values[~feasible].max() < values[feasible].max()


def test_k_out_of_range():
    """Test k outside 0..n"""
    with pytest.raises(ProblemError):
        build_dks(Graph(3), 4)


def test_qubo_validation():
    """Test QUBO shape and key checks"""
    with pytest.raises(ProblemError):
        QuboModel(2, np.zeros(3))
    with pytest.raises(ProblemError):
        QuboModel(2, np.zeros(2), {(1, 0): 1.0})


def test_mis_penalty():
    """Test the indicator penalty of an independent-set instance"""
    mis = build_mis(Graph.from_pairs(3, [(0, 1), (1, 2)]))
    assert mis.lam == 3.0
    outcomes = np.array([0b101, 0b011, 0b111])
    assert mis.is_feasible(outcomes).tolist() == [True, False, False]
    assert mis.penalty_objective(outcomes).tolist() == [2.0, -1.0, 0.0]
    lcu = mis.indicator_lcu(0.8)
    assert lcu.gamma_cost <= mis.graph.num_edges + 1 + 1e-9


def test_mis_needs_edges_and_unit_weights():
    """Test MIS input validation"""
    with pytest.raises(ProblemError):
        build_mis(Graph(2, ((0, 1, 2.0),)))
    with pytest.raises(ProblemError):
        build_mis(Graph(3)).indicator_lcu(0.1)


def test_complement_split():
    """Test that C(wt, 2) minus missing edges reproduces the edge count"""
    graph = erdos_renyi_graph(7, 0.6, seed=1)
    split = complement_split(graph)
    outcomes = np.arange(2**graph.n_nodes)
    assert np.allclose(split.values(outcomes), build_dks(graph, 2).objective(outcomes))
    assert split.weight_lcu(0.4).gamma_cost <= graph.n_nodes + 1 + 1e-9
