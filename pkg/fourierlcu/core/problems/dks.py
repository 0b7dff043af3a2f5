"""Densest-k-subgraph and maximum-independent-set instances as QUBOs.

Objectives are maximized. Bitstring index bit i is variable x_i.
"""

from dataclasses import dataclass, field

import numpy as np

from fourierlcu.core.lcu_diagonal import (
    DiagonalLcu,
    build_diagonal_lcu,
    composed_values,
    indicator_window_values,
    quadratic_form_function,
)
from fourierlcu.core.problems.graphs import Graph
from fourierlcu.core.sim.statevector import popcount
from fourierlcu.libs.utils.errors import ProblemError


def index_bits(indices: np.ndarray, n: int) -> np.ndarray:
    """(len(indices), n) 0/1 matrix; column i is bit i."""
    return (np.asarray(indices, dtype=np.int64)[:, None] >> np.arange(n)) & 1


@dataclass
class QuboModel:
    """sum_i linear[i] x_i + sum_{i<j} quadratic[(i, j)] x_i x_j + constant."""

    n: int
    linear: np.ndarray
    quadratic: dict[tuple[int, int], float] = field(default_factory=dict)
    constant: float = 0.0

    def __post_init__(self):
        self.linear = np.asarray(self.linear, dtype=float)
        if self.linear.shape != (self.n,):
            raise ProblemError(f"Expected {self.n} linear terms, got shape {self.linear.shape}")
        for i, j in self.quadratic:
            if not 0 <= i < j < self.n:
                raise ProblemError(f"Quadratic key ({i}, {j}) must satisfy 0 <= i < j < {self.n}")

    def quadratic_matrix(self) -> np.ndarray:
        """Strictly upper-triangular coupling matrix."""
        q = np.zeros((self.n, self.n))
        for (i, j), w in self.quadratic.items():
            q[i, j] = w
        return q

    def values(self, indices: np.ndarray) -> np.ndarray:
        bits = index_bits(indices, self.n).astype(float)
        quad = np.einsum("ci,ij,cj->c", bits, self.quadratic_matrix(), bits)
        return bits @ self.linear + quad + self.constant

    def value(self, index: int) -> float:
        return float(self.values(np.array([index]))[0])

    def __add__(self, other: "QuboModel") -> "QuboModel":
        if other.n != self.n:
            raise ProblemError("Cannot add QUBOs over different variable counts")
        quad = dict(self.quadratic)
        for key, w in other.quadratic.items():
            quad[key] = quad.get(key, 0.0) + w
        return QuboModel(self.n, self.linear + other.linear, quad, self.constant + other.constant)


@dataclass
class IsingModel:
    """sum_i h[i] z_i + sum_{i<j} J[(i, j)] z_i z_j + offset with z_i = 1 - 2 x_i."""

    n: int
    h: np.ndarray
    couplings: dict[tuple[int, int], float]
    offset: float

    def values(self, indices: np.ndarray) -> np.ndarray:
        z = 1.0 - 2.0 * index_bits(indices, self.n)
        out = z @ self.h + self.offset
        for (i, j), w in self.couplings.items():
            out = out + w * z[:, i] * z[:, j]
        return out


def ising_from_qubo(qubo: QuboModel) -> IsingModel:
    """Substitute x_i = (1 - z_i) / 2; values agree on every bitstring."""
    h = -0.5 * qubo.linear.copy()
    offset = qubo.constant + 0.5 * float(qubo.linear.sum())
    couplings = {}
    for (i, j), w in sorted(qubo.quadratic.items()):
        couplings[(i, j)] = 0.25 * w
        h[i] -= 0.25 * w
        h[j] -= 0.25 * w
        offset += 0.25 * w
    return IsingModel(qubo.n, h, couplings, offset)


@dataclass
class DksInstance:
    """Densest k-subgraph with the cardinality penalty -lam (wt(x) - k)^2."""

    graph: Graph
    k: int
    lam: float
    objective_qubo: QuboModel
    penalty_qubo: QuboModel

    @property
    def n(self) -> int:
        return self.graph.n_nodes

    @property
    def qubo(self) -> QuboModel:
        return self.objective_qubo + self.penalty_qubo

    def objective(self, indices: np.ndarray) -> np.ndarray:
        return self.objective_qubo.values(indices)

    def penalty_objective(self, indices: np.ndarray) -> np.ndarray:
        indices = np.asarray(indices, dtype=np.int64)
        return self.objective(indices) - self.lam * (popcount(indices) - self.k) ** 2

    def is_feasible(self, indices: np.ndarray) -> np.ndarray:
        return popcount(np.asarray(indices, dtype=np.int64)) == self.k


def penalty_factor(graph: Graph) -> float:
    """1 + maximum weighted degree."""
    if graph.n_nodes == 0:
        return 1.0
    return 1.0 + float(graph.weighted_degrees().max())


def build_dks(graph: Graph, k: int) -> DksInstance:
    n = graph.n_nodes
    if not 0 <= k <= n:
        raise ProblemError(f"k={k} outside 0..{n}")
    lam = penalty_factor(graph)
    objective = QuboModel(n, np.zeros(n), {(i, j): w for i, j, w in graph.edges})
    # -lam (sum x - k)^2 with x_i^2 = x_i
    penalty = QuboModel(
        n,
        np.full(n, -lam * (1 - 2 * k)),
        {(i, j): -2.0 * lam for i in range(n) for j in range(i + 1, n)},
        -lam * k * k,
    )
    return DksInstance(graph, k, lam, objective, penalty)


@dataclass
class MisInstance:
    """Maximum independent set: maximize sum x_i - lam * I(x covers an edge).

    The violation g(x) counts covered edges; the indicator penalty is a
    function of g and has a diagonal LCU with at most |E| + 1 branches.
    """

    graph: Graph
    lam: float

    @property
    def n(self) -> int:
        return self.graph.n_nodes

    def violation(self, indices: np.ndarray) -> np.ndarray:
        adjacency = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j, _ in self.graph.edges:
            adjacency[i, j] = 1
        return quadratic_form_function(adjacency)(np.asarray(indices, dtype=np.int64))

    def is_feasible(self, indices: np.ndarray) -> np.ndarray:
        return self.violation(indices) == 0

    def objective(self, indices: np.ndarray) -> np.ndarray:
        return popcount(np.asarray(indices, dtype=np.int64)).astype(float)

    def penalty_objective(self, indices: np.ndarray) -> np.ndarray:
        return self.objective(indices) - self.lam * (~self.is_feasible(indices))

    def indicator_lcu(self, gamma: float) -> DiagonalLcu:
        """LCU of e^{-i gamma I(g(x) != 0)} over g in 0..|E|."""
        m = self.graph.num_edges
        if m == 0:
            raise ProblemError("Graph has no edges; the indicator penalty is identically zero")
        return build_diagonal_lcu(indicator_window_values(m, 0, 0), gamma)


def build_mis(graph: Graph) -> MisInstance:
    """Unweighted MIS with lam = n, so any covering string scores below the empty set."""
    if any(w != 1.0 for _, _, w in graph.edges):
        raise ProblemError("MIS instances take unweighted graphs")
    return MisInstance(graph, float(max(1, graph.n_nodes)))


@dataclass
class ComplementSplit:
    """sum_{(i,j) in E} x_i x_j = C(wt(x), 2) + sum_{(i,j) not in E} (-1) x_i x_j.

    The first term depends only on the Hamming weight, so it takes a diagonal
    LCU with at most n + 1 branches; the complement edges are applied directly.
    """

    n: int
    weight_values: np.ndarray
    complement: Graph

    def values(self, indices: np.ndarray) -> np.ndarray:
        indices = np.asarray(indices, dtype=np.int64)
        bits = index_bits(indices, self.n)
        out = self.weight_values[popcount(indices)].astype(float)
        for i, j, w in self.complement.edges:
            out = out + w * bits[:, i] * bits[:, j]
        return out

    def weight_lcu(self, gamma: float) -> DiagonalLcu:
        return build_diagonal_lcu(self.weight_values, gamma)


def complement_split(graph: Graph) -> ComplementSplit:
    if any(w != 1.0 for _, _, w in graph.edges):
        raise ProblemError("Complement split needs an unweighted graph")
    present = set(graph.edge_pairs())
    missing = [
        (i, j, -1.0) for i in range(graph.n_nodes) for j in range(i + 1, graph.n_nodes) if (i, j) not in present
    ]
    return ComplementSplit(
        graph.n_nodes,
        composed_values(graph.n_nodes, lambda w: w * (w - 1) / 2),
        Graph(graph.n_nodes, tuple(missing)),
    )
