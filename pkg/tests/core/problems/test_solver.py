"""
Tests for the exact solver.
"""

import numpy as np
import pytest

from fourierlcu.core.problems.dks import build_dks
from fourierlcu.core.problems.graphs import complete_graph, random_regular_graph
from fourierlcu.core.problems.solver import solve_exact, solve_instance
from fourierlcu.libs.utils.enums import SolveMode
from fourierlcu.libs.utils.errors import ProblemError


def test_complete_graph_ties():
    """Test that every weight-k string of K5 is optimal"""
    instance = build_dks(complete_graph(5), 2)
    result = solve_instance(instance)
    assert result.value == 1.0
    assert len(result.solutions) == 10
    assert result.bitstrings[0] == "00011"


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_modes_agree(seed):
    """Test exhaustive and feasible-only search on the same instance"""
    instance = build_dks(random_regular_graph(10, 3, seed=seed), 3)
    feasible = solve_instance(instance, SolveMode.FEASIBLE_ONLY)
    exhaustive = solve_instance(instance, SolveMode.EXHAUSTIVE)
    assert feasible.value == pytest.approx(exhaustive.value)
    assert feasible.solutions.tolist() == exhaustive.solutions.tolist()


def test_solutions_sorted_and_optimal():
    """Test that returned strings are sorted and attain the optimum"""
    instance = build_dks(random_regular_graph(8, 3, seed=5), 4)
    result = solve_instance(instance)
    assert result.solutions.tolist() == sorted(result.solutions.tolist())
    assert np.allclose(instance.objective(result.solutions), result.value)
    assert np.all(instance.is_feasible(result.solutions))


def test_generic_objective():
    """Test maximizing an arbitrary function of the index"""
    result = solve_exact(lambda x: -((x - 5) ** 2).astype(float), 4)
    assert result.solutions.tolist() == [5]
    assert result.value == 0.0


def test_limits():
    """Test size and k validation"""
    with pytest.raises(ProblemError):
        solve_exact(lambda x: x, 30, SolveMode.EXHAUSTIVE)
    with pytest.raises(ProblemError):
        solve_exact(lambda x: x, 4, SolveMode.FEASIBLE_ONLY, k=5)
