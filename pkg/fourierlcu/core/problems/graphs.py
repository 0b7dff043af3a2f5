from dataclasses import dataclass, field
from typing import Iterable, Optional

import networkx as nx
import numpy as np
from loguru import logger

from fourierlcu.constants import HEAVY_HEX_REFERENCE_EDGES
from fourierlcu.libs.utils.errors import ProblemError

Edge = tuple[int, int, float]


@dataclass(frozen=True)
class Graph:
    """Simple weighted graph on nodes 0..n_nodes-1; edges are sorted (i, j, w) with i < j."""

    n_nodes: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n_nodes < 0:
            raise ProblemError(f"Node count must be non-negative, got {self.n_nodes}")
        normalized = []
        for i, j, w in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise ProblemError(f"Self-loop on node {i}")
            if not (0 <= i < self.n_nodes and 0 <= j < self.n_nodes):
                raise ProblemError(f"Edge ({i}, {j}) outside 0..{self.n_nodes - 1}")
            normalized.append((min(i, j), max(i, j), float(w)))
        normalized.sort()
        pairs = [(i, j) for i, j, _ in normalized]
        if len(set(pairs)) != len(pairs):
            raise ProblemError("Duplicate edges")
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def weighted_degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_nodes)
        for i, j, w in self.edges:
            deg[i] += abs(w)
            deg[j] += abs(w)
        return deg

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_nodes, dtype=np.int64)
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def edge_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j, _ in self.edges]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n_nodes))
        g.add_weighted_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """Relabels nodes in sorted order; missing weights default to 1."""
        mapping = {node: idx for idx, node in enumerate(sorted(g.nodes))}
        edges = [(mapping[u], mapping[v], d.get("weight", 1.0)) for u, v, d in g.edges(data=True)]
        return cls(len(mapping), tuple(edges))

    @classmethod
    def from_pairs(cls, n_nodes: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n_nodes, tuple((i, j, 1.0) for i, j in pairs))


def complete_graph(n: int) -> Graph:
    return Graph.from_pairs(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def random_regular_graph(n: int, d: int, seed: int, max_tries: int = 10_000) -> Graph:
    """d-regular graph from the pairing model, rejecting self-loops and multi-edges."""
    if n < 1 or d < 0 or d >= n or (n * d) % 2:
        raise ProblemError(f"No simple {d}-regular graph on {n} nodes")
    rng = np.random.default_rng(seed)
    points = np.repeat(np.arange(n), d)
    for attempt in range(max_tries):
        pairs = rng.permutation(points).reshape(-1, 2)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        keys = {(min(a, b), max(a, b)) for a, b in pairs.tolist()}
        if len(keys) == len(pairs):
            logger.debug(f"Regular graph n={n} d={d} accepted after {attempt + 1} pairing(s)")
            return Graph.from_pairs(n, sorted(keys))
    raise ProblemError(f"Pairing model found no simple graph in {max_tries} attempts")


def erdos_renyi_graph(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ProblemError(f"Edge probability must be in [0, 1], got {p}")
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def edge_coloring(graph: Graph) -> dict[tuple[int, int], int]:
    """Proper edge coloring in sorted edge order.

    Conflicts are repaired by flipping the alternating two-color path from the
    blocked endpoint. On bipartite graphs this uses exactly max-degree colors;
    otherwise a new color is opened when the flip cannot help. Colors are
    relabelled by first appearance along the sorted edges.
    """
    palette = int(graph.degrees().max()) if graph.n_nodes and graph.num_edges else 0
    at: list[dict[int, int]] = [{} for _ in range(graph.n_nodes)]  # node -> {color: neighbour}

    def free(node: int, limit: int) -> Optional[int]:
        return next((c for c in range(limit) if c not in at[node]), None)

    def set_color(u: int, v: int, c: int):
        at[u][c] = v
        at[v][c] = u

    def flip_path(start: int, a: int, b: int):
        path, node, color = [], start, a
        while color in at[node]:
            nxt = at[node][color]
            path.append((node, nxt, color))
            node, color = nxt, (b if color == a else a)
        for u, v, c in path:
            del at[u][c]
            del at[v][c]
        for u, v, c in path:
            set_color(u, v, b if c == a else a)

    for u, v in graph.edge_pairs():
        a = free(u, palette)
        b = free(v, palette)
        if a is None or b is None:
            palette += 1
            set_color(u, v, palette - 1)
            continue
        if a not in at[v]:
            set_color(u, v, a)
            continue
        flip_path(v, a, b)
        if a not in at[u] and a not in at[v]:
            set_color(u, v, a)
        else:
            palette += 1
            set_color(u, v, palette - 1)

    raw = {}
    for node, colors in enumerate(at):
        for c, other in colors.items():
            raw[(min(node, other), max(node, other))] = c
    relabel: dict[int, int] = {}
    for pair in graph.edge_pairs():
        relabel.setdefault(raw[pair], len(relabel))
    return {pair: relabel[raw[pair]] for pair in graph.edge_pairs()}


def heavy_hex_lattice(rows: int, cols: int) -> Graph:
    """Hexagonal lattice with one bridge node inserted on every edge.

    Lattice sites are numbered first in sorted order, then bridge nodes in
    sorted edge order.
    """
    if rows < 1 or cols < 1:
        raise ProblemError(f"Heavy-hex lattice needs rows, cols >= 1, got ({rows}, {cols})")
    hexagonal = Graph.from_networkx(nx.hexagonal_lattice_graph(rows, cols))
    base = hexagonal.n_nodes
    pairs = []
    for e, (i, j) in enumerate(hexagonal.edge_pairs()):
        bridge = base + e
        pairs += [(i, bridge), (j, bridge)]
    return Graph.from_pairs(base + hexagonal.num_edges, pairs)


@dataclass
class HeavyHexSwapGraph:
    """Logical graph induced by SWAP layers on a heavy-hex device.

    ``placements[s][p]`` is the logical qubit sitting on physical node p after
    ``s`` SWAP layers; ``swap_layers[s]`` lists the physical pairs swapped in layer s.
    """

    graph: Graph
    physical: Graph
    coloring: dict[tuple[int, int], int]
    swap_layers: list[list[tuple[int, int]]] = field(default_factory=list)
    placements: list[np.ndarray] = field(default_factory=list)

    @property
    def num_colors(self) -> int:
        return len(set(self.coloring.values()))

    def logical_pairs(self, stage: int) -> list[tuple[int, int]]:
        """Logical pairs that are physically adjacent after ``stage`` SWAP layers."""
        place = self.placements[stage]
        return [tuple(sorted((int(place[p]), int(place[q])))) for p, q in self.physical.edge_pairs()]


def heavy_hex_swap_graph(rows: int, cols: int, swap_layers: int, sum_duplicates: bool = False) -> HeavyHexSwapGraph:
    """Heavy-hex graph extended by ``swap_layers`` layers of parallel SWAPs.

    Layer l swaps along color class l mod (number of colors). After every layer
    each physical edge contributes its current logical pair. Duplicate pairs
    keep weight 1 unless ``sum_duplicates`` is set.
    """
    if swap_layers < 0:
        raise ProblemError(f"swap_layers must be non-negative, got {swap_layers}")
    physical = heavy_hex_lattice(rows, cols)
    coloring = edge_coloring(physical)
    num_colors = len(set(coloring.values()))
    if swap_layers and num_colors == 0:
        raise ProblemError("Lattice has no edges to swap along")

    place = np.arange(physical.n_nodes)
    placements = [place.copy()]
    layers = []
    weights: dict[tuple[int, int], float] = {pair: 1.0 for pair in physical.edge_pairs()}
    for layer in range(swap_layers):
        color = layer % num_colors
        swaps = [pair for pair in physical.edge_pairs() if coloring[pair] == color]
        for p, q in swaps:
            place[p], place[q] = place[q], place[p]
        layers.append(swaps)
        placements.append(place.copy())
        for p, q in physical.edge_pairs():
            key = (min(place[p], place[q]), max(place[p], place[q]))
            key = (int(key[0]), int(key[1]))
            if key in weights:
                if sum_duplicates:
                    weights[key] += 1.0
            else:
                weights[key] = 1.0

    graph = Graph(physical.n_nodes, tuple((i, j, w) for (i, j), w in weights.items()))
    result = HeavyHexSwapGraph(graph, physical, coloring, layers, placements)
    logger.debug(
        f"Heavy-hex ({rows}, {cols}): {physical.n_nodes} nodes, {physical.num_edges} physical edges, "
        f"{num_colors} colors, {graph.num_edges} edges after {swap_layers} SWAP layer(s)"
    )
    if (rows, cols, swap_layers) == (5, 3, 3) and graph.num_edges != HEAVY_HEX_REFERENCE_EDGES:
        logger.warning(
            f"Heavy-hex preset gives {graph.num_edges} edges, reference count is {HEAVY_HEX_REFERENCE_EDGES}; "
            "the edge count depends on the coloring order"
        )
    return result
