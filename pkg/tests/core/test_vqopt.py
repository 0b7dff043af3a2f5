"""
Tests for grid search and bounded Nelder-Mead refinement.
"""

import numpy as np
import pytest

from fourierlcu.core.vqopt import (
    Evaluation,
    OptProblem,
    default_grid_points,
    grid_search,
    initial_simplex,
    local_refine,
    optimize,
)
from fourierlcu.libs.utils.errors import OptimizationError


def _paraboloid(center):
    return lambda p: -((p["x"] - center[0]) ** 2) - (p["y"] - center[1]) ** 2


def test_default_grid_points():
    """Test grid density by dimension"""
    assert default_grid_points(2) > default_grid_points(3) > default_grid_points(5)


def test_grid_search_order_and_best():
    """Test that the grid is evaluated in order and the best point kept"""
    problem = OptProblem(("x", "y"), [0, 0], [1, 1], _paraboloid((1.0, 0.5)), grid_points=3)
    trace = grid_search(problem)
    assert len(trace) == 9
    assert trace.entries[0].params == {"x": 0.0, "y": 0.0}
    assert trace.best_params == {"x": 1.0, "y": 0.5}
    assert trace.best_value == 0.0


def test_optimize_finds_interior_maximum():
    """Test refinement beyond the grid resolution"""
    problem = OptProblem(("x", "y"), [-1, -1], [1, 1], _paraboloid((0.31, -0.42)), grid_points=5, budget=400)
    trace = optimize(problem)
    assert trace.best_params["x"] == pytest.approx(0.31, abs=1e-3)
    assert trace.best_params["y"] == pytest.approx(-0.42, abs=1e-3)
    assert len(trace) <= 400


def test_refinement_stays_in_bounds():
    """Test a maximum outside the box is clipped to the boundary"""
    seen = []

    def objective(p):
        seen.append((p["x"], p["y"]))
        return -((p["x"] - 3.0) ** 2) - p["y"] ** 2

    problem = OptProblem(("x", "y"), [0, -1], [1, 1], objective, grid_points=3, budget=200)
    trace = optimize(problem)
    assert all(0.0 <= x <= 1.0 and -1.0 <= y <= 1.0 for x, y in seen)
    assert trace.best_params["x"] == pytest.approx(1.0)


def test_budget_is_respected():
    """Test that refinement stops at the evaluation budget"""
    problem = OptProblem(("x", "y"), [-1, -1], [1, 1], _paraboloid((0.3, 0.3)), grid_points=3, budget=15)
    trace = local_refine(problem, [0.0, 0.0], grid_search(problem))
    assert len(trace) == 15


def test_extra_points_and_best_sample():
    """Test extra start points and the best sampled value"""
    def objective(p):
        return Evaluation(-abs(p["x"] - 0.123), best_sample=p["x"], extras={"twice": 2 * p["x"]})

    problem = OptProblem(("x",), [0], [1], objective, grid_points=3)
    trace = grid_search(problem, extra_points=[(0.123,)])
    assert len(trace) == 4
    assert trace.best_params == {"x": 0.123}
    assert trace.best_sample == 1.0
    assert trace.entries[-1].extras == {"twice": 0.246}


def test_initial_simplex_steps_inward():
    """Test that simplex vertices at the upper bound step downward"""
    problem = OptProblem(("x", "y"), [0, 0], [1, 2], lambda p: 0.0, grid_points=2)
    simplex = initial_simplex(problem, np.array([1.0, 0.0]))
    assert simplex.shape == (3, 2)
    assert simplex[1].tolist() == pytest.approx([0.95, 0.0])
    assert simplex[2].tolist() == pytest.approx([1.0, 0.1])


def test_invalid_problems():
    """Test bounds, grid and budget validation"""
    objective = _paraboloid((0, 0))
    with pytest.raises(OptimizationError):
        OptProblem(("x", "y"), [0, 1], [1, 1], objective)
    with pytest.raises(OptimizationError):
        OptProblem(("x", "y"), [0, 0], [1, np.inf], objective)
    with pytest.raises(OptimizationError):
        OptProblem(("x", "y"), [0, 0], [1, 1], objective, grid_points=1)
    with pytest.raises(OptimizationError):
        OptProblem(("x", "y"), [0, 0], [1, 1], objective, grid_points=3, budget=5)
    problem = OptProblem(("x", "y"), [0, 0], [1, 1], objective, grid_points=3)
    with pytest.raises(OptimizationError):
        local_refine(problem, [2.0, 0.0])
