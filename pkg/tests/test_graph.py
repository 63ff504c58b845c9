from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from graphgen import random_connected
from toricbases.graph import (
    BLOCK_CUT_EDGE,
    BLOCK_CYCLE,
    BLOCK_OTHER,
    CHORD_BRIDGE,
    CHORD_EVEN,
    CHORD_ODD,
    EvenClosedWalk,
    Graph,
    GraphError,
    block_decomposition,
    block_tree,
    blocks_of_edges,
    chords_of,
    cycle_edges,
    enumerate_cycles,
    euler_trail,
    internal_block_distance,
    is_bipartite,
)


def nxg(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    return h


BOWTIE = Graph.from_edges([(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
C4 = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0)])


def graphs(min_edges=3, max_edges=10):
    return st.builds(random_connected, st.integers(0, 10**6), st.integers(min_edges, max_edges))


class TestGraph:
    def test_rejects_loops_parallel_edges_and_bad_vertices(self):
        with pytest.raises(GraphError, match="loop"):
            Graph.from_edges([(0, 0)])
        with pytest.raises(GraphError, match="parallel"):
            Graph.from_edges([(0, 1), (1, 0)])
        with pytest.raises(GraphError, match="out of range"):
            Graph(2, ((0, 2),))

    def test_edges_are_normalized(self):
        g = Graph.from_edges([(3, 1), (1, 0)])
        assert g.edges == ((1, 3), (0, 1))
        assert g.edge_index(3, 1) == 0 and g.edge_index(0, 3) is None

    def test_edge_list_round_trip(self):
        text = BOWTIE.to_edge_list()
        assert text.splitlines()[0] == "5 6"
        assert Graph.from_edge_list("# bowtie\n" + text) == BOWTIE

    def test_edge_list_header_mismatch(self):
        with pytest.raises(GraphError, match="announces"):
            Graph.from_edge_list("3 3\n0 1\n1 2\n")

    def test_labels_do_not_affect_equality(self):
        assert Graph(2, ((0, 1),), {0: "a"}) == Graph(2, ((0, 1),))


class TestBlocks:
    def test_bowtie(self):
        dec = block_decomposition(BOWTIE)
        assert dec.cut_vertices == {2}
        assert dec.kinds == (BLOCK_CYCLE, BLOCK_CYCLE)
        assert dec.blocks == (frozenset({0, 1, 2}), frozenset({3, 4, 5}))

    def test_kinds(self):
        # triangle, pendant edge, and K4 minus nothing
        g = Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)])
        dec = block_decomposition(g)
        assert sorted(dec.kinds) == sorted([BLOCK_CYCLE, BLOCK_CUT_EDGE, BLOCK_OTHER])
        assert dec.cut_vertices == {2, 3}

    def test_disconnected_graph_rejected(self):
        with pytest.raises(GraphError, match="not connected"):
            block_decomposition(Graph.from_edges([(0, 1), (2, 3)]))

    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_blocks_match_networkx(self, g):
        dec = block_decomposition(g)
        h = nxg(g)
        ours = {frozenset(g.edges[e] for e in b) for b in dec.blocks}
        theirs = {frozenset(tuple(sorted(e)) for e in comp) for comp in nx.biconnected_component_edges(h)}
        assert ours == theirs
        assert dec.cut_vertices == set(nx.articulation_points(h))

    @settings(max_examples=40, deadline=None)
    @given(graphs())
    def test_block_tree_is_a_tree(self, g):
        t = block_tree(g)
        tree = nx.Graph(list(t.adjacency))
        tree.add_nodes_from(t.nodes)
        assert nx.is_tree(tree)

    def test_internal_block_distance(self):
        # three triangles in a chain: 0-1-2, 2-3-4, 4-5-6
        g = Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (4, 6)])
        t = block_tree(g)
        assert internal_block_distance(t, 0, 2) == 1
        assert internal_block_distance(t, 0, 1) == 0
        with pytest.raises(GraphError):
            internal_block_distance(t, 1, 1)

    def test_blocks_of_edge_subset(self):
        dec = blocks_of_edges(BOWTIE, {0, 1, 2, 3})
        assert dec.kinds == (BLOCK_CYCLE, BLOCK_CUT_EDGE)


class TestCycles:
    def test_k4(self):
        k4 = Graph.from_edges([(i, j) for i in range(4) for j in range(i + 1, 4)])
        cycles = enumerate_cycles(k4)
        assert [len(c) for c in cycles] == [3, 3, 3, 3, 4, 4, 4]
        assert all(c[0] == min(c) and c[1] < c[-1] for c in cycles)

    def test_length_cap(self):
        k4 = Graph.from_edges([(i, j) for i in range(4) for j in range(i + 1, 4)])
        assert len(enumerate_cycles(k4, max_length=3)) == 4

    def test_large_graph_needs_cap(self):
        big = Graph.from_edges([(i, i + 1) for i in range(25)])
        with pytest.raises(GraphError):
            enumerate_cycles(big)

    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_cycles_match_networkx(self, g):
        ours = {frozenset(cycle_edges(g, c)) for c in enumerate_cycles(g)}
        theirs = set()
        for c in nx.simple_cycles(nxg(g)):
            theirs.add(frozenset(g.edge_index(c[i], c[(i + 1) % len(c)]) for i in range(len(c))))
        assert ours == theirs

    @settings(max_examples=40, deadline=None)
    @given(graphs())
    def test_bipartite_matches_networkx(self, g):
        ok, coloring = is_bipartite(g)
        assert ok == nx.is_bipartite(nxg(g))
        if ok:
            assert all(coloring[u] != coloring[v] for u, v in g.edges)


class TestWalks:
    def test_even_closed_walk_partition(self):
        w = EvenClosedWalk.from_vertices(C4, [0, 1, 2, 3])
        assert w.edges == (0, 1, 2, 3)
        assert w.w_plus == (0, 2) and w.w_minus == (1, 3)
        assert w.vertices == (0, 1, 2, 3)

    def test_odd_walk_rejected(self):
        tri = Graph.from_edges([(0, 1), (1, 2), (0, 2)])
        with pytest.raises(GraphError, match="walk not even"):
            EvenClosedWalk(tri, (0, 1, 2))

    def test_open_walk_rejected(self):
        with pytest.raises(GraphError):
            EvenClosedWalk(C4, (0, 1))

    def test_euler_trail_uses_each_edge_once(self):
        w = euler_trail(BOWTIE)
        assert sorted(w.edges) == list(range(6))
        assert w.vertices.count(2) == 2

    def test_euler_trail_errors(self):
        with pytest.raises(GraphError, match="not Eulerian"):
            euler_trail(Graph.from_edges([(0, 1), (1, 2)]))
        with pytest.raises(GraphError, match="walk not even"):
            euler_trail(Graph.from_edges([(0, 1), (1, 2), (0, 2)]))
        with pytest.raises(GraphError, match="not connected"):
            euler_trail(Graph.from_edges([(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7)]))


class TestChords:
    def test_hexagon_chords(self):
        # hexagon 0..5 with a long diagonal (0,3) and a short one (0,2)
        g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (0, 2)])
        w = EvenClosedWalk.from_vertices(g, range(6))
        kinds = dict(chords_of(g, w))
        assert kinds == {6: CHORD_EVEN, 7: CHORD_ODD}

    def test_bridge_chord(self):
        # two triangles joined by the path 2-3; the chord 1-4 joins different blocks
        g = Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5), (1, 4)])
        w = EvenClosedWalk(g, (0, 1, 3, 4, 5, 6, 3, 2))
        assert dict(chords_of(g, w)) == {7: CHORD_BRIDGE}
