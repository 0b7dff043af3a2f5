from dataclasses import dataclass
from itertools import combinations, islice
from typing import Callable, Iterator, Optional

import numpy as np
from loguru import logger
from scipy.special import comb

from fourierlcu.constants import MAX_EXHAUSTIVE_QUBITS, MAX_FEASIBLE_STRINGS
from fourierlcu.core.samples import format_bitstring
from fourierlcu.libs.utils.enums import SolveMode
from fourierlcu.libs.utils.errors import ProblemError

CHUNK = 1 << 18


@dataclass
class SolveResult:
    n: int
    value: float
    solutions: np.ndarray
    mode: SolveMode

    @property
    def bitstrings(self) -> list[str]:
        return [format_bitstring(i, self.n) for i in self.solutions]


def _exhaustive_chunks(n: int) -> Iterator[np.ndarray]:
    total = 1 << n
    for start in range(0, total, CHUNK):
        yield np.arange(start, min(start + CHUNK, total), dtype=np.int64)


def _weight_k_chunks(n: int, k: int) -> Iterator[np.ndarray]:
    weights = 1 << np.arange(n, dtype=np.int64)
    combos = combinations(range(n), k)
    while True:
        block = list(islice(combos, CHUNK))
        if not block:
            return
        if k == 0:
            yield np.zeros(len(block), dtype=np.int64)
        else:
            yield weights[np.asarray(block)].sum(axis=1)


def solve_exact(
    values: Callable[[np.ndarray], np.ndarray],
    n: int,
    mode: SolveMode = SolveMode.EXHAUSTIVE,
    k: Optional[int] = None,
    atol: float = 1e-9,
) -> SolveResult:
    """Maximum of ``values`` over all strings, or over weight-k strings only.

    ``values`` maps an array of bitstring indices to objective values, for
    example ``QuboModel.values`` or ``DksInstance.objective``. Every string
    within ``atol`` of the optimum is returned, sorted by index.
    """
    if mode == SolveMode.EXHAUSTIVE:
        if n > MAX_EXHAUSTIVE_QUBITS:
            raise ProblemError(f"Exhaustive search limited to n <= {MAX_EXHAUSTIVE_QUBITS}, got {n}")
        chunks = _exhaustive_chunks(n)
    else:
        if k is None or not 0 <= k <= n:
            raise ProblemError(f"Feasible-only search needs 0 <= k <= {n}, got {k}")
        count = int(comb(n, k, exact=True))
        if count > MAX_FEASIBLE_STRINGS:
            raise ProblemError(f"C({n}, {k}) = {count} exceeds the {MAX_FEASIBLE_STRINGS} string limit")
        chunks = _weight_k_chunks(n, k)

    best = -np.inf
    winners: list[np.ndarray] = []
    for indices in chunks:
        vals = np.asarray(values(indices), dtype=float)
        top = float(vals.max())
        if top > best + atol:
            best = top
            winners = []
        if top >= best - atol:
            winners.append(indices[vals >= best - atol])
    solutions = np.sort(np.concatenate(winners)) if winners else np.zeros(0, dtype=np.int64)
    # a later chunk may have raised the optimum within atol of earlier winners
    if len(solutions):
        vals = np.asarray(values(solutions), dtype=float)
        best = float(vals.max())
        solutions = solutions[vals >= best - atol]
    logger.debug(f"solve_exact({mode.value}): optimum {best:.6g} attained by {len(solutions)} string(s)")
    return SolveResult(n, best, solutions, mode)


def solve_instance(instance, mode: SolveMode = SolveMode.FEASIBLE_ONLY) -> SolveResult:
    """Optimum of a cardinality-constrained instance over feasible strings.

    Exhaustive mode maximizes the penalized objective, which has the same optimum.
    """
    if mode == SolveMode.EXHAUSTIVE:
        return solve_exact(instance.penalty_objective, instance.n, mode)
    return solve_exact(instance.objective, instance.n, mode, k=instance.k)
