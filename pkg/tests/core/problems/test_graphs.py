"""
Tests for graph generators and the heavy-hex SWAP construction.
"""

import networkx as nx
import numpy as np
import pytest

from fourierlcu.constants import HEAVY_HEX_REFERENCE_EDGES
from fourierlcu.core.problems.graphs import (
    Graph,
    complete_graph,
    edge_coloring,
    erdos_renyi_graph,
    heavy_hex_lattice,
    heavy_hex_swap_graph,
    random_regular_graph,
)
from fourierlcu.libs.utils.errors import ProblemError


def test_edges_are_normalized():
    """Test that edges are stored as sorted (i, j, w) with i < j"""
    graph = Graph(3, ((2, 0, 1.5), (1, 0, 1.0)))
    assert graph.edges == ((0, 1, 1.0), (0, 2, 1.5))
    assert graph.weighted_degrees().tolist() == [2.5, 1.0, 1.5]


def test_invalid_edges():
    """Test self-loops, duplicates and out-of-range nodes"""
    with pytest.raises(ProblemError):
        Graph(2, ((1, 1, 1.0),))
    with pytest.raises(ProblemError):
        Graph(3, ((0, 1, 1.0), (1, 0, 2.0)))
    with pytest.raises(ProblemError):
        Graph(2, ((0, 2, 1.0),))


@pytest.mark.parametrize("n,d", [(6, 3), (12, 3), (9, 2), (10, 4)])
def test_random_regular_graph(n, d):
    """Test that every node has degree d and generation is seeded"""
    graph = random_regular_graph(n, d, seed=3)
    assert np.all(graph.degrees() == d)
    assert graph == random_regular_graph(n, d, seed=3)


def test_random_regular_graph_parity():
    """Test that n * d must be even"""
    with pytest.raises(ProblemError):
        random_regular_graph(7, 3, seed=1)


def test_erdos_renyi_graph():
    """Test the seeded G(n, p) generator"""
    assert erdos_renyi_graph(8, 1.0, seed=0).num_edges == 28
    assert erdos_renyi_graph(8, 0.5, seed=2) == erdos_renyi_graph(8, 0.5, seed=2)
    with pytest.raises(ProblemError):
        erdos_renyi_graph(5, 1.5, seed=0)


def test_networkx_round_trip():
    """Test conversion through networkx"""
    graph = complete_graph(4)
    assert Graph.from_networkx(graph.to_networkx()) == graph


def test_edge_coloring_is_proper():
    """Test that edges sharing a node get different colors"""
    graph = heavy_hex_lattice(2, 2)
    coloring = edge_coloring(graph)
    for node in range(graph.n_nodes):
        colors = [c for (i, j), c in coloring.items() if node in (i, j)]
        assert len(colors) == len(set(colors))
    # heavy-hex lattices are bipartite, so max-degree colors suffice
    assert nx.is_bipartite(graph.to_networkx())
    assert len(set(coloring.values())) == int(graph.degrees().max())


def test_heavy_hex_lattice():
    """Test node counts and the degree-3 limit"""
    small = heavy_hex_lattice(1, 1)
    assert small.n_nodes == 12
    assert small.num_edges == 12
    assert heavy_hex_lattice(5, 3).n_nodes == 106
    assert int(heavy_hex_lattice(5, 3).degrees().max()) == 3


def test_swap_graph_without_layers_is_the_device():
    """Test that zero SWAP layers leave the physical graph"""
    hh = heavy_hex_swap_graph(1, 1, 0)
    assert hh.graph == hh.physical
    assert len(hh.placements) == 1


def test_swap_layers_add_edges():
    """Test that SWAP layers add logical couplings and track placements"""
    hh = heavy_hex_swap_graph(1, 1, 3)
    assert len(hh.swap_layers) == 3
    assert len(hh.placements) == 4
    assert hh.graph.num_edges > hh.physical.num_edges
    for place in hh.placements:
        assert sorted(place.tolist()) == list(range(12))
    for stage in range(4):
        assert set(hh.logical_pairs(stage)) <= set(hh.graph.edge_pairs())


def test_sum_duplicates_raises_weights():
    """Test weight accumulation for repeated logical pairs"""
    plain = heavy_hex_swap_graph(1, 1, 3)
    summed = heavy_hex_swap_graph(1, 1, 3, sum_duplicates=True)
    assert plain.graph.edge_pairs() == summed.graph.edge_pairs()
    assert all(w == 1.0 for _, _, w in plain.graph.edges)
    assert sum(w for _, _, w in summed.graph.edges) > plain.graph.num_edges


def test_heavy_hex_preset_edge_count():
    """Test 106 qubits, 120 couplers and 328 logical edges after three SWAP layers"""
    hh = heavy_hex_swap_graph(5, 3, 3)
    assert hh.graph.n_nodes == 106
    assert hh.physical.num_edges == 120
    assert hh.graph.num_edges == HEAVY_HEX_REFERENCE_EDGES
