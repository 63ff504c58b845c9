from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from graphgen import connected_graphs, random_connected, to_graph
from toricbases import walks
from toricbases.binomial import Binomial
from toricbases.families import complete_graph, ladder_graph, subdivide, triangle_tree
from toricbases.graph import EvenClosedWalk, Graph, GraphError, block_decomposition, euler_trail, is_connected_edges
from toricbases.lattice import LatticeVector, VectorConfig, graver, in_ugb, is_primitive_vector

C4 = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0)])
BOWTIE = Graph.from_edges([(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
# two triangles joined by the edge (2, 3)
DUMBBELL = Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)])
TRIANGLE = Graph.from_edges([(0, 1), (1, 2), (0, 2)])
G13 = triangle_tree(3, 1)


def oracle_graver(g: Graph) -> set[Binomial]:
    return set(graver(VectorConfig.from_graph(g)).binomials())


class TestBinomialOfWalk:
    def test_four_cycle(self):
        w = EvenClosedWalk.from_vertices(C4, [0, 1, 2, 3])
        b = walks.binomial_of_walk(w)
        assert b.text() == "e1*e3 - e2*e4" and b.degree == 2

    def test_euler_trail_of_triangle_tree(self):
        b = walks.binomial_of_walk(euler_trail(G13))
        assert b.degree == 6 and not b.unreduced

    def test_repeated_edge_gets_exponent_two(self):
        w = walks.primitive_walk(DUMBBELL, range(7))
        b = walks.binomial_of_walk(w)
        assert 2 in (b.plus[3], b.minus[3])

    def test_same_edge_in_both_parities_is_unreduced(self):
        w = EvenClosedWalk(TRIANGLE, (0, 1, 2) * 2)
        b = walks.binomial_of_walk(w)
        assert b.unreduced and not any(b.reduce().plus)


class TestSubgraphShapes:
    def test_circuit_shapes(self):
        assert walks.is_circuit_subgraph(C4, range(4))
        assert walks.is_circuit_subgraph(BOWTIE, range(6))
        assert walks.is_circuit_subgraph(DUMBBELL, range(7))
        assert not walks.is_circuit_subgraph(TRIANGLE, range(3))

    def test_disconnected_subgraph_rejected(self):
        g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 4)])
        with pytest.raises(GraphError, match="not connected"):
            walks.is_circuit_subgraph(g, {0, 3})
        with pytest.raises(GraphError, match="not connected"):
            walks.is_primitive_subgraph(g, {0, 3})

    def test_primitive_shapes(self):
        assert walks.is_primitive_subgraph(C4, range(4))
        assert walks.is_primitive_subgraph(DUMBBELL, range(7))
        assert walks.is_primitive_subgraph(G13, range(12))

    def test_triangle_and_square_sharing_a_vertex(self):
        g = Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (2, 5)])
        assert not walks.is_primitive_subgraph(g, range(7))
        assert all(b.support != frozenset(range(7)) for b in oracle_graver(g))

    def test_primitive_walk_realizes_the_support(self):
        w = walks.primitive_walk(G13, range(12))
        assert w.edge_set == frozenset(range(12))
        assert walks.binomial_of_walk(w).canonical() in oracle_graver(G13)

    def test_primitive_walk_rejects_bad_shape(self):
        with pytest.raises(GraphError):
            walks.primitive_walk(TRIANGLE, range(3))


class TestWalkPredicates:
    def test_is_primitive_walk(self):
        assert walks.is_primitive_walk(C4, EvenClosedWalk.from_vertices(C4, [0, 1, 2, 3]))
        twice = EvenClosedWalk(C4, (0, 1, 2, 3) * 2)
        assert not walks.is_primitive_walk(C4, twice)
        assert walks.is_primitive_walk(DUMBBELL, walks.primitive_walk(DUMBBELL, range(7)))

    def test_predicates_require_primitive(self):
        twice = EvenClosedWalk(C4, (0, 1, 2, 3) * 2)
        for check in (walks.is_strongly_primitive, walks.is_mixed):
            with pytest.raises(ValueError, match="requires primitive walk"):
                check(twice)
        for check in (walks.is_minimal_walk, walks.is_indispensable_walk):
            with pytest.raises(ValueError, match="requires primitive walk"):
                check(C4, twice)

    def test_sinks_of_bowtie(self):
        w = euler_trail(BOWTIE)
        sk = walks.sinks(w)
        assert sk.sinks == (frozenset({2}), frozenset({2}))
        assert walks.is_strongly_primitive(w)

    def test_even_cycle_has_no_sinks(self):
        w = EvenClosedWalk.from_vertices(C4, [0, 1, 2, 3])
        assert walks.sinks(w).all() == frozenset()
        assert walks.is_strongly_primitive(w) and walks.is_mixed(w)

    def test_subdivided_sinks_are_far_apart(self):
        g = subdivide(G13, 3)
        w = euler_trail(g)
        sk = walks.sinks(w)
        center = [s for s in sk.sinks if len(s) == 3]
        assert center == [frozenset({0, 1, 2})]
        assert walks.is_strongly_primitive(w)

    def test_triangle_tree_euler_walk(self):
        w = euler_trail(G13)
        assert walks.is_primitive_walk(G13, w)
        assert not walks.is_mixed(w)  # the centre triangle is pure
        assert not walks.is_strongly_primitive(w)
        assert not walks.is_indispensable_walk(G13, w)
        vec = LatticeVector(walks.binomial_of_walk(w).vector)
        assert not in_ugb(VectorConfig.from_graph(G13), vec)

    def test_circuit_walks_of_triangle_trees_are_mixed(self):
        for r in (1, 2):
            g = triangle_tree(3, r)
            assert all(walks.is_mixed(w) for w in walks.enumerate_circuit_walks(g).walks)

    def test_bridge_chord_breaks_minimality(self):
        # outer triangles at centre vertices 0 and 1, joined through centre vertex 2
        t0 = {e for e, (a, b) in enumerate(G13.edges) if {a, b} & {3, 4} and 0 in (a, b) or (a, b) == (3, 4)}
        t1 = {e for e, (a, b) in enumerate(G13.edges) if {a, b} & {5, 6} and 1 in (a, b) or (a, b) == (5, 6)}
        via2 = {G13.edge_index(0, 2), G13.edge_index(1, 2)}
        direct = {G13.edge_index(0, 1)}
        assert len(t0) == len(t1) == 3
        long = walks.primitive_walk(G13, t0 | t1 | via2)
        short = walks.primitive_walk(G13, t0 | t1 | direct)
        assert not walks.is_minimal_walk(G13, long)
        assert walks.is_minimal_walk(G13, short)

    def test_ladder_squares_are_minimal(self):
        g = ladder_graph(2)
        squares = [w for w in walks.enumerate_circuit_walks(g).walks if len(w) == 4]
        assert len(squares) == 4
        assert all(walks.is_minimal_walk(g, w) and walks.is_indispensable_walk(g, w) for w in squares)

    def test_f4_in_complete_graph(self):
        k4 = complete_graph(4)
        w = EvenClosedWalk.from_vertices(k4, [0, 1, 2, 3])
        d1, d2 = k4.edge_index(0, 2), k4.edge_index(1, 3)
        assert walks.crosses_effectively(w, d1, d2)
        assert walks.forms_f4(w, d1, d2)
        assert not walks.crosses_f4(w, d1, (d1, d2))
        assert walks.is_minimal_walk(k4, w)
        assert not walks.is_indispensable_walk(k4, w)

    def test_subdivision_walks_are_indispensable(self):
        for base in (BOWTIE, G13):
            g = subdivide(base, 3)
            w = euler_trail(g)
            assert walks.is_indispensable_walk(g, w) and walks.is_minimal_walk(g, w) and walks.is_mixed(w)


class TestEnumerators:
    def test_ladder_one(self):
        assert len(walks.enumerate_circuit_walks(ladder_graph(1))) == 6

    def test_ladder_two(self):
        g = ladder_graph(2)
        gr = walks.enumerate_graver_walks(g, degree_cap=g.edge_count)
        assert len(gr) == 20 and not gr.truncated
        assert set(gr.elements) == set(walks.enumerate_circuit_walks(g).elements)
        assert set(gr.elements) == set(walks.enumerate_ugb_walks(g, g.edge_count).elements)

    def test_odd_cycle_has_nothing(self):
        assert len(walks.enumerate_circuit_walks(TRIANGLE)) == 0
        assert len(walks.enumerate_graver_walks(TRIANGLE)) == 0

    def test_bowtie_single_element(self):
        gr = walks.enumerate_graver_walks(BOWTIE)
        assert len(gr) == 1 and gr.max_degree == 3

    def test_triangle_tree(self):
        gr = walks.enumerate_graver_walks(G13)
        euler = walks.binomial_of_walk(euler_trail(G13)).canonical()
        assert euler in gr and len(gr) == 10
        circuits = walks.enumerate_circuit_walks(G13)
        assert circuits.max_degree == 5
        assert set(walks.enumerate_ugb_walks(G13).elements) == set(circuits.elements)
        markov = walks.enumerate_markov_walks(G13)
        assert set(markov.elements) < set(circuits.elements)

    def test_even_cycle_markov(self):
        m = walks.enumerate_markov_walks(Graph.from_edges([(i, (i + 1) % 6) for i in range(6)]))
        assert len(m) == 1 and m.indispensable == frozenset(m.elements)

    def test_ladder_markov_sizes(self):
        for n in (1, 2, 3):
            g = ladder_graph(n)
            assert len(walks.enumerate_markov_walks(g, g.edge_count)) == 2 * n + 1

    def test_k4_ugb(self):
        assert walks.enumerate_ugb_walks(complete_graph(4)).max_degree == 2

    def test_cap_is_mandatory_on_large_graphs(self):
        g = ladder_graph(2)
        with pytest.raises(ValueError, match="degree cap"):
            walks.enumerate_graver_walks(g)

    def test_cap_marks_truncation(self):
        gr = walks.enumerate_graver_walks(G13, degree_cap=5)
        assert gr.truncated and gr.max_degree == 5
        assert not walks.enumerate_graver_walks(G13, degree_cap=12).truncated

    def test_circuit_degree_bound_on_triangle_trees(self):
        for r in (1, 2):
            assert walks.enumerate_circuit_walks(triangle_tree(3, r)).max_degree <= 4 * r + 1

    def test_enumerated_walks_realize_their_binomials(self):
        gr = walks.enumerate_graver_walks(complete_graph(5))
        for b, w in zip(gr.elements, gr.walks):
            assert walks.binomial_of_walk(w).canonical() == b
            assert walks.is_primitive_walk(w.host, w)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(5, 11))
def test_random_graph_invariants(seed, edges):
    g = random_connected(seed, edges)
    gr = walks.enumerate_graver_walks(g)
    circuits = set(walks.enumerate_circuit_walks(g).elements)
    ugb_set = set(walks.enumerate_ugb_walks(g).elements)
    assert circuits <= ugb_set <= set(gr.elements)
    assert set(walks.enumerate_markov_walks(g).elements) <= ugb_set
    for b, w in zip(gr.elements, gr.walks):
        assert walks.is_primitive_subgraph(g, b.support)
        assert walks.sinks(w).all() <= blocks_cut_vertices(g, w)
        assert walks.is_circuit_subgraph(g, b.support) == (b in circuits)


def blocks_cut_vertices(g, w):
    from toricbases.graph import blocks_of_edges

    return blocks_of_edges(g, w.edge_set).cut_vertices


@pytest.mark.slow
def test_primitive_supports_match_the_oracle_up_to_ten_edges():
    """Every oracle Graver support has primitive shape, and every primitive-shaped support carries one."""
    levels = connected_graphs(10)
    for m, hs in levels.items():
        for h in hs:
            g = to_graph(h)
            supports = {b.support for b in oracle_graver(g)}
            assert all(walks.is_primitive_subgraph(g, s) for s in supports), g.edges
            if m <= 8:
                for size in range(4, m + 1):
                    for W in combinations(range(m), size):
                        if is_connected_edges(g, W) and walks.is_primitive_subgraph(g, W):
                            assert frozenset(W) in supports, (g.edges, W)


def test_multiplicity_fallback_uses_lattice():
    # the right shape traversed twice: reduced, but twice a primitive binomial
    once = walks.primitive_walk(DUMBBELL, range(7))
    twice = EvenClosedWalk(DUMBBELL, once.edges * 2)
    b = walks.binomial_of_walk(twice)
    assert not b.unreduced and walks.is_primitive_subgraph(DUMBBELL, b.support)
    assert not walks.is_primitive_walk(DUMBBELL, twice)
    assert not is_primitive_vector(VectorConfig.from_graph(DUMBBELL), LatticeVector(b.vector))
