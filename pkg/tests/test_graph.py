import random

import pytest
from hypothesis import given, settings, strategies as st

from hamindex.crosscheck import canonical_key, random_graph, unlabeled_connected_graphs
from hamindex.graph import (BudgetExceeded, Graph, GraphError, contract_groups, contract_subgraph,
                            degree, is_connected, is_eulerian, iterated_line_graph, line_graph,
                            odd_vertices, subgraph, union)

from conftest import complete, cycle, path, star


def same_shape(a, b):
    return canonical_key(a) == canonical_key(b)


class TestBasics:
    def test_degree_triangle(self):
        g = cycle(3)
        assert [degree(g, v) for v in g.vertices] == [2, 2, 2]

    def test_degree_isolated(self):
        assert degree(Graph([7]), 7) == 0

    def test_degree_counts_parallel_edges(self):
        g = Graph([0, 1], [(0, 1), (0, 1)])
        assert degree(g, 0) == 2

    def test_degree_unknown_vertex(self):
        with pytest.raises(GraphError):
            degree(cycle(3), 9)

    def test_connectivity_examples(self):
        assert is_connected(Graph([]))
        assert is_connected(cycle(3))
        assert not is_connected(Graph(range(4), [(0, 1), (2, 3)]))

    def test_eulerian_examples(self):
        assert is_eulerian(Graph([0]))
        assert is_eulerian(cycle(3))
        assert not is_eulerian(path(2))

    def test_rejects_self_loops_and_dangling(self):
        with pytest.raises(GraphError):
            Graph([0], [(0, 0)])
        with pytest.raises(GraphError):
            Graph([0], [(0, 1)])

    def test_union_and_subgraph(self):
        p = Graph([0, 1, 2], {0: (0, 1), 1: (1, 2)})
        e = Graph([2, 3], {2: (2, 3)})
        u = union(p, e)
        assert u.n == 4 and u.m == 3 and same_shape(u, path(3))
        assert odd_vertices(cycle(4)) == set()
        assert odd_vertices(path(2)) == {0, 2}
        s = subgraph(cycle(4), [0, 1, 2], [0, 1])
        assert s.m == 2 and s.vertex_set == {0, 1, 2}

    def test_union_conflicting_ids(self):
        with pytest.raises(GraphError):
            union(Graph([0, 1], {0: (0, 1)}), Graph([1, 2], {0: (1, 2)}))

    def test_subgraph_dangling(self):
        with pytest.raises(GraphError):
            subgraph(cycle(4), [0, 1], [1])  # edge 1 is (1, 2)


class TestLineGraphs:
    def test_path_shrinks(self):
        assert same_shape(line_graph(path(3)).relabeled()[0], path(2))

    def test_cycle_fixed(self):
        assert same_shape(line_graph(cycle(5)).relabeled()[0], cycle(5))

    def test_claw_gives_triangle(self):
        assert same_shape(line_graph(star(3)).relabeled()[0], cycle(3))

    def test_back_labels(self):
        g = star(3)
        lg = line_graph(g)
        assert all(lg.labels[e] == g.endpoints(e) for e in g.edges)

    def test_parallel_edges_give_simple_output(self):
        lg = line_graph(Graph([0, 1, 2], [(0, 1), (0, 1), (1, 2)]))
        assert lg.is_simple() and lg.m == 3

    def test_iterated(self):
        g = complete(4)
        assert iterated_line_graph(g, 0) == g
        k1 = iterated_line_graph(path(4), 4)
        assert (k1.n, k1.m) == (1, 0)
        assert same_shape(iterated_line_graph(cycle(3), 5), cycle(3))

    def test_iterated_budget(self):
        with pytest.raises(BudgetExceeded):
            iterated_line_graph(complete(6), 3, size_cap=50)


class TestContraction:
    def test_triangle_edge(self):
        out, sv = contract_subgraph(cycle(3), {0, 1})
        assert out.n == 2 and out.m == 2 and not out.is_simple()
        assert out.degree(sv) == 2

    def test_whole_graph(self):
        out, sv = contract_subgraph(cycle(4), range(4))
        assert (out.n, out.m) == (1, 0)
        assert out.labels[sv] == (0, 1, 2, 3)

    def test_star(self):
        out, _ = contract_subgraph(star(3), {0, 1})
        assert same_shape(out, star(2))

    def test_errors(self):
        with pytest.raises(GraphError):
            contract_subgraph(path(3), {0, 3})
        with pytest.raises(GraphError):
            contract_subgraph(path(3), set())
        with pytest.raises(GraphError):
            contract_groups(path(3), [{0, 1}, {1, 2}])


# -- properties ---------------------------------------------------------------

graphs = st.integers(1, 9).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                         .filter(lambda e: e[0] != e[1]), max_size=20)))


@given(graphs)
def test_handshake(case):
    n, edges = case
    g = Graph(range(n), edges)
    assert sum(g.degree(v) for v in g.vertices) == 2 * g.m


def test_eulerian_characterization_random():
    rng = random.Random(1)
    for _ in range(1000):
        g = random_graph(rng.randint(1, 10), rng.random(), rng)
        assert g.is_eulerian() == (g.is_connected() and not g.odd_vertices())


def test_line_graph_of_connected_graph_is_connected():
    for g in unlabeled_connected_graphs(6):
        if g.m:
            assert line_graph(g).is_connected()


@settings(max_examples=200)
@given(graphs, st.data())
def test_contraction_keeps_outside_degrees(case, data):
    n, edges = case
    g = Graph(range(n), edges)
    comp = sorted(g.components(), key=len)[-1]
    start = data.draw(st.sampled_from(sorted(comp)))
    size = data.draw(st.integers(1, len(comp)))
    # grow a connected set by BFS
    hv = [start]
    for v in hv:
        for w in sorted(g.neighbors(v)):
            if w not in hv and len(hv) < size:
                hv.append(w)
    out, vmap = contract_groups(g, [set(hv)])
    for v in g.vertices:
        if v not in hv:
            assert out.degree(vmap[v]) == g.degree(v)
