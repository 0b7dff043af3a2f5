from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """Map ``fn`` over ``items`` on up to ``workers`` threads; results keep input order."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))


def spawn_generators(seed: int, count: int) -> list[np.random.Generator]:
    """Independent generators derived from ``seed``; stream i depends only on (seed, i)."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.default_rng(child) for child in children]


def chunk_sizes(total: int, chunk: int) -> Sequence[int]:
    full, rest = divmod(total, chunk)
    return [chunk] * full + ([rest] if rest else [])
