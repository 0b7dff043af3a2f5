"""Grid search followed by bounded Nelder-Mead refinement (maximization)."""

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np
from loguru import logger
from scipy.optimize import Bounds, minimize

from fourierlcu.constants import (
    GRID_POINTS_2D,
    GRID_POINTS_3D,
    GRID_POINTS_HIGH,
    REFINE_BUDGET,
    REFINE_XATOL,
    SIMPLEX_STEP_FRACTION,
)
from fourierlcu.libs.utils.errors import OptimizationError
from fourierlcu.libs.utils.parallel import map_ordered


@dataclass(frozen=True)
class Evaluation:
    """Objective value plus the best sampled objective seen at this point."""

    value: float
    best_sample: Optional[float] = None
    extras: Mapping[str, float] = field(default_factory=dict)


Objective = Callable[[dict[str, float]], Union[float, Evaluation]]


def default_grid_points(dim: int) -> int:
    if dim <= 2:
        return GRID_POINTS_2D
    if dim == 3:
        return GRID_POINTS_3D
    return GRID_POINTS_HIGH


@dataclass
class OptProblem:
    names: Sequence[str]
    lower: Sequence[float]
    upper: Sequence[float]
    objective: Objective
    grid_points: Optional[int] = None
    budget: Optional[int] = None
    xatol: float = REFINE_XATOL
    workers: int = 1

    def __post_init__(self):
        self.names = tuple(self.names)
        self.lower = np.asarray(self.lower, dtype=float)
        self.upper = np.asarray(self.upper, dtype=float)
        dim = len(self.names)
        if dim == 0 or self.lower.shape != (dim,) or self.upper.shape != (dim,):
            raise OptimizationError("Need one lower and one upper bound per parameter")
        if not (np.all(np.isfinite(self.lower)) and np.all(np.isfinite(self.upper))):
            raise OptimizationError("Bounds must be finite")
        if np.any(self.lower >= self.upper):
            raise OptimizationError("Each lower bound must be below its upper bound")
        if self.grid_points is None:
            self.grid_points = default_grid_points(dim)
        if self.grid_points < 2:
            raise OptimizationError(f"Grid needs at least 2 points per axis, got {self.grid_points}")
        if self.budget is None:
            self.budget = self.grid_size + REFINE_BUDGET
        if self.budget < self.grid_size:
            raise OptimizationError(f"Budget {self.budget} is smaller than the grid ({self.grid_size} points)")

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def grid_size(self) -> int:
        return self.grid_points**self.dim

    def params(self, x: Sequence[float]) -> dict[str, float]:
        return {name: float(v) for name, v in zip(self.names, x)}

    def grid(self) -> list[tuple[float, ...]]:
        axes = [np.linspace(lo, hi, self.grid_points) for lo, hi in zip(self.lower, self.upper)]
        return list(itertools.product(*axes))


@dataclass
class TraceEntry:
    params: dict[str, float]
    value: float
    best_sample: Optional[float] = None
    extras: Mapping[str, float] = field(default_factory=dict)


@dataclass
class OptTrace:
    """Evaluation log in call order; ``best_*`` track the maximum so far."""

    names: tuple[str, ...]
    entries: list[TraceEntry] = field(default_factory=list)
    best_params: Optional[dict[str, float]] = None
    best_value: float = -np.inf
    best_sample: Optional[float] = None

    def record(self, params: dict[str, float], result: Union[float, Evaluation]) -> float:
        if not isinstance(result, Evaluation):
            result = Evaluation(float(result))
        entry = TraceEntry(params, float(result.value), result.best_sample, dict(result.extras))
        self.entries.append(entry)
        if entry.value > self.best_value:
            self.best_value = entry.value
            self.best_params = dict(params)
        if entry.best_sample is not None and (self.best_sample is None or entry.best_sample > self.best_sample):
            self.best_sample = entry.best_sample
        return entry.value

    def __len__(self) -> int:
        return len(self.entries)

    def best_vector(self) -> np.ndarray:
        return np.array([self.best_params[name] for name in self.names])


class _BudgetExhausted(Exception):
    pass


def grid_search(
    problem: OptProblem, trace: Optional[OptTrace] = None, extra_points: Sequence[Sequence[float]] = ()
) -> OptTrace:
    """Evaluate the full grid (plus ``extra_points``); entries keep grid order."""
    trace = trace if trace is not None else OptTrace(problem.names)
    points = problem.grid() + [tuple(float(v) for v in p) for p in extra_points]
    if len(trace) + len(points) > problem.budget:
        raise OptimizationError(f"Grid of {len(points)} points exceeds the remaining budget")
    results = map_ordered(lambda x: problem.objective(problem.params(x)), points, workers=problem.workers)
    for x, result in zip(points, results):
        trace.record(problem.params(x), result)
    logger.debug(f"Grid search over {problem.names}: {len(points)} points, best {trace.best_value:.6g}")
    return trace


def initial_simplex(problem: OptProblem, start: np.ndarray) -> np.ndarray:
    """Start plus one vertex per axis, stepped 5% of the box width inward."""
    steps = SIMPLEX_STEP_FRACTION * (problem.upper - problem.lower)
    simplex = np.tile(start, (problem.dim + 1, 1))
    for axis in range(problem.dim):
        moved = start[axis] + steps[axis]
        if moved > problem.upper[axis]:
            moved = start[axis] - steps[axis]
        simplex[axis + 1, axis] = moved
    return simplex


def local_refine(problem: OptProblem, start: Sequence[float], trace: Optional[OptTrace] = None) -> OptTrace:
    """Bounded Nelder-Mead from ``start`` until the simplex shrinks below ``xatol`` or the budget runs out."""
    trace = trace if trace is not None else OptTrace(problem.names)
    start = np.asarray(start, dtype=float)
    if np.any(start < problem.lower) or np.any(start > problem.upper):
        raise OptimizationError(f"Start {start.tolist()} outside the bounds")
    remaining = problem.budget - len(trace)
    if remaining <= 0:
        return trace

    def negated(x: np.ndarray) -> float:
        if len(trace) >= problem.budget:
            raise _BudgetExhausted
        x = np.clip(x, problem.lower, problem.upper)
        params = problem.params(x)
        return -trace.record(params, problem.objective(params))

    try:
        minimize(
            negated,
            start,
            method="Nelder-Mead",
            bounds=Bounds(problem.lower, problem.upper),
            options={
                "initial_simplex": initial_simplex(problem, start),
                "xatol": problem.xatol,
                "fatol": np.inf,
                "maxfev": remaining,
            },
        )
    except _BudgetExhausted:
        logger.debug("Refinement stopped at the evaluation budget")
    logger.debug(f"Refinement finished after {len(trace)} evaluations, best {trace.best_value:.6g}")
    return trace


def optimize(problem: OptProblem, starts: Sequence[Sequence[float]] = ()) -> OptTrace:
    """Grid search (plus ``starts``) and refinement from the best point found."""
    trace = grid_search(problem, extra_points=starts)
    return local_refine(problem, trace.best_vector(), trace)
