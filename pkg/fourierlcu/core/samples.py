from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from fourierlcu.libs.utils.errors import DimensionError, SamplingError

NO_BRANCH = -1


def format_bitstring(index: int, n: int) -> str:
    """Big-endian text: the rightmost character is qubit 0."""
    return format(int(index), f"0{n}b")


def parse_bitstring(text: str) -> int:
    return int(text, 2)


@dataclass
class SampleSet:
    """Weighted outcome collection with optional branch provenance.

    Each record is (outcome index, branch id or -1, weight). Shot samples use
    counts as weights; exact distributions use probabilities.
    """

    n: int
    outcomes: np.ndarray
    branches: np.ndarray
    weights: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.outcomes = np.asarray(self.outcomes, dtype=np.int64)
        self.branches = np.asarray(self.branches, dtype=np.int64)
        self.weights = np.asarray(self.weights, dtype=float)
        if not (len(self.outcomes) == len(self.branches) == len(self.weights)):
            raise DimensionError("outcomes, branches and weights must have equal length")
        if np.any(self.weights < 0):
            raise SamplingError("Sample weights must be non-negative")

    @classmethod
    def from_counts(cls, n: int, counts: np.ndarray, branch: int = NO_BRANCH) -> "SampleSet":
        counts = np.asarray(counts)
        nz = np.flatnonzero(counts)
        return cls(n, nz, np.full(len(nz), branch), counts[nz].astype(float))

    @classmethod
    def from_probabilities(cls, n: int, probs: np.ndarray) -> "SampleSet":
        return cls.from_counts(n, np.asarray(probs, dtype=float))

    @classmethod
    def concat(cls, parts: Iterable["SampleSet"], metadata: Optional[dict] = None) -> "SampleSet":
        parts = list(parts)
        if not parts:
            raise SamplingError("Nothing to concatenate")
        return cls(
            parts[0].n,
            np.concatenate([p.outcomes for p in parts]),
            np.concatenate([p.branches for p in parts]),
            np.concatenate([p.weights for p in parts]),
            metadata=metadata or {},
        )

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def merged(self) -> "SampleSet":
        """Collapse duplicate (outcome, branch) records, sorted by outcome then branch."""
        if len(self.outcomes) == 0:
            return self
        keys = np.stack([self.outcomes, self.branches], axis=1)
        uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
        weights = np.bincount(inverse.reshape(-1), weights=self.weights, minlength=len(uniq))
        return SampleSet(self.n, uniq[:, 0], uniq[:, 1], weights, metadata=dict(self.metadata))

    def distribution(self) -> np.ndarray:
        """Normalized dense distribution over all 2**n outcomes."""
        total = self.total_weight
        if total <= 0:
            raise SamplingError("SampleSet has zero total weight")
        dense = np.bincount(self.outcomes, weights=self.weights, minlength=2**self.n)
        return dense / total

    def branch_frequencies(self, num_branches: int) -> np.ndarray:
        mask = self.branches >= 0
        freq = np.bincount(self.branches[mask], weights=self.weights[mask], minlength=num_branches)
        return freq / self.weights[mask].sum()

    def to_rows(self) -> list[tuple[str, int, float]]:
        merged = self.merged()
        return [
            (format_bitstring(o, self.n), int(b), float(w))
            for o, b, w in zip(merged.outcomes, merged.branches, merged.weights)
        ]

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[tuple[str, int, float]]) -> "SampleSet":
        rows = list(rows)
        return cls(
            n,
            [parse_bitstring(r[0]) for r in rows],
            [int(r[1]) for r in rows],
            [float(r[2]) for r in rows],
        )
