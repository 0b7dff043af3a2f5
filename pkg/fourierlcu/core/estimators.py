"""Metrics over weighted outcome sets: CVaR, feasibility and optimality rates."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from fourierlcu.core.samples import SampleSet
from fourierlcu.libs.utils.enums import Tail
from fourierlcu.libs.utils.errors import SamplingError
from fourierlcu.types import MetricReport

OPTIMUM_ATOL = 1e-9


def expectation(values: np.ndarray, weights: np.ndarray) -> float:
    weights = np.asarray(weights, dtype=float)
    total = weights.sum()
    if total <= 0:
        raise SamplingError("Total weight must be positive")
    return float(np.dot(values, weights) / total)


def cvar(
    values: np.ndarray,
    weights: np.ndarray,
    alpha: float,
    tail: Tail = Tail.UPPER,
    keys: Optional[np.ndarray] = None,
) -> float:
    """Mean of the best (upper) or worst (lower) ``alpha`` fraction of the mass.

    The atom on the boundary is included fractionally, so exactly ``alpha``
    mass is averaged. ``keys`` (bitstring indices) order ties.
    """
    if not 0.0 < alpha <= 1.0:
        raise SamplingError(f"alpha must lie in (0, 1], got {alpha}")
    values = np.asarray(values, dtype=float)
    weights = np.asarray(weights, dtype=float)
    total = weights.sum()
    if total <= 0:
        raise SamplingError("Total weight must be positive")
    if keys is None:
        keys = np.arange(len(values))
    primary = -values if tail == Tail.UPPER else values
    order = np.lexsort((keys, primary))
    mass = weights[order] / total
    before = np.concatenate(([0.0], np.cumsum(mass)[:-1]))
    taken = np.clip(alpha - before, 0.0, mass)
    return float(np.dot(taken, values[order]) / alpha)


def sample_cvar(samples: SampleSet, values: np.ndarray, alpha: float, tail: Tail = Tail.UPPER) -> float:
    """CVaR of per-record ``values`` over ``samples``."""
    return cvar(values, samples.weights, alpha, tail, keys=samples.outcomes)


def cvar_sandwich_check(
    coherent: np.ndarray, lcu: np.ndarray, gamma: float, f_values: np.ndarray
) -> tuple[float, float]:
    """Slacks (E[f] - lower CVaR, upper CVaR - E[f]) at level 1/gamma.

    ``coherent`` and ``lcu`` are dense distributions over the same outcomes;
    both slacks are non-negative when gamma * lcu dominates coherent.
    """
    mean = expectation(f_values, coherent)
    alpha = min(1.0, 1.0 / gamma)
    keys = np.arange(len(f_values))
    lower = cvar(f_values, lcu, alpha, Tail.LOWER, keys=keys)
    upper = cvar(f_values, lcu, alpha, Tail.UPPER, keys=keys)
    return mean - lower, upper - mean


def _optimal_mask(instance, outcomes: np.ndarray, optimum: float) -> np.ndarray:
    return instance.is_feasible(outcomes) & (instance.objective(outcomes) >= optimum - OPTIMUM_ATOL)


def best_feasible_value(samples: SampleSet, instance) -> Optional[float]:
    """Largest objective over feasible outcomes with positive weight, if any."""
    live = samples.weights > 0
    outcomes = samples.outcomes[live]
    feasible = outcomes[instance.is_feasible(outcomes)]
    if len(feasible) == 0:
        return None
    return float(instance.objective(feasible).max())


def metric_report(
    samples: SampleSet,
    instance,
    optimum: float,
    gamma: float = 1.0,
    eta: Optional[float] = None,
    label: str = "",
) -> MetricReport:
    """Table row for a sampled or exact distribution.

    The expectation uses the penalized objective; CVaR is taken at risk level
    ``eta`` (1/gamma by default).
    """
    eta = min(1.0, 1.0 / gamma) if eta is None else eta
    merged = samples.merged()
    outcomes, weights = merged.outcomes, merged.weights
    total = weights.sum()
    values = instance.penalty_objective(outcomes)
    feasible = instance.is_feasible(outcomes)
    optimal = _optimal_mask(instance, outcomes, optimum)
    p_feasible = float(weights[feasible].sum() / total)
    conditional = None
    if feasible.any():
        conditional = expectation(instance.objective(outcomes[feasible]), weights[feasible])
    return MetricReport(
        label=label,
        expectation=expectation(values, weights),
        gamma=float(gamma),
        eta=float(eta),
        cvar_lower=cvar(values, weights, eta, Tail.LOWER, keys=outcomes),
        cvar_upper=cvar(values, weights, eta, Tail.UPPER, keys=outcomes),
        p_feasible=p_feasible,
        p_optimal=float(weights[optimal].sum() / total),
        expectation_given_feasible=conditional,
        best_feasible=best_feasible_value(merged, instance),
    )


def p_optimal(probs: np.ndarray, instance, optimum: float) -> float:
    """Mass of a dense distribution on optimal feasible strings."""
    outcomes = np.arange(len(probs), dtype=np.int64)
    return float(probs[_optimal_mask(instance, outcomes, optimum)].sum())


@dataclass(frozen=True)
class HistogramRow:
    value: float
    feasible: bool
    mass: float
    reference: Optional[float] = None


def value_histogram(
    dist: SampleSet,
    instance,
    reference: Optional[SampleSet] = None,
    gamma: Optional[float] = None,
    decimals: int = 9,
) -> list[HistogramRow]:
    """Mass per (penalized objective value, feasibility) bin, sorted by value.

    With ``reference`` the rows also carry its mass per bin divided by
    ``gamma``, the lower bound an LCU distribution must reach in every bin.
    """

    def binned(samples: SampleSet) -> dict[tuple[float, bool], float]:
        merged = samples.merged()
        vals = np.round(instance.penalty_objective(merged.outcomes), decimals)
        feas = instance.is_feasible(merged.outcomes)
        out: dict[tuple[float, bool], float] = {}
        total = merged.weights.sum()
        for v, f, w in zip(vals, feas, merged.weights):
            key = (float(v) + 0.0, bool(f))
            out[key] = out.get(key, 0.0) + float(w) / total
        return out

    main = binned(dist)
    ref = binned(reference) if reference is not None else {}
    scale = 1.0 / gamma if gamma else 1.0
    rows = []
    for key in sorted(set(main) | set(ref)):
        rows.append(
            HistogramRow(
                value=key[0],
                feasible=key[1],
                mass=main.get(key, 0.0),
                reference=ref.get(key, 0.0) * scale if reference is not None else None,
            )
        )
    return rows
