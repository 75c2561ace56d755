import pytest

from hamindex.crosscheck import unlabeled_connected_graphs
from hamindex.graph import BudgetExceeded, Graph, GraphError, line_graph
from hamindex.hindex import is_path
from hamindex.oracles import (OracleBudget, brute_des, brute_edge_hamiltonian_cycle,
                              brute_eulerian_steiner, brute_hamiltonian, brute_hindex, brute_ses)

from conftest import complete, cycle, path, petersen, spider, star


def test_hamiltonian_examples():
    assert brute_hamiltonian(cycle(6))
    assert not brute_hamiltonian(star(4))
    assert not brute_hamiltonian(path(5))
    assert not brute_hamiltonian(petersen())


def test_eulerian_examples():
    assert brute_ses(cycle(4))
    assert not brute_eulerian_steiner(path(2), [0, 2])
    assert brute_des(star(3))
    assert not brute_des(path(3))


def test_hindex_examples():
    assert brute_hindex(cycle(5)) == 0
    assert brute_hindex(star(3)) == 1
    assert brute_hindex(spider(2)) == 2
    with pytest.raises(GraphError):
        brute_hindex(path(3))


def test_edge_hamiltonian_examples():
    assert brute_edge_hamiltonian_cycle(cycle(4))
    assert brute_edge_hamiltonian_cycle(star(3))
    assert not brute_edge_hamiltonian_cycle(path(3))


def test_budgets():
    with pytest.raises(BudgetExceeded):
        brute_hamiltonian(cycle(10), OracleBudget(max_vertices=5))
    with pytest.raises(BudgetExceeded):
        brute_ses(complete(9), OracleBudget(max_cycle_rank=10))
    with pytest.raises(BudgetExceeded):
        brute_edge_hamiltonian_cycle(complete(5))
    with pytest.raises(ValueError):
        OracleBudget(max_steps=0)


def test_line_graph_oracle_matches_graph_core():
    from hamindex.oracles import _line_graph
    for g in unlabeled_connected_graphs(5):
        assert _line_graph(g) == line_graph(g).relabeled()[0]


def test_edge_hamiltonian_three_way():
    count = 0
    for g in unlabeled_connected_graphs(6):
        if not 3 <= g.m <= 9:
            continue
        ehc = brute_edge_hamiltonian_cycle(g)
        assert ehc == brute_hamiltonian(line_graph(g).relabeled()[0]) == brute_des(g)
        count += 1
    assert count > 50


def test_index_bound_spot_check():
    for g in unlabeled_connected_graphs(6):
        if g.n >= 4 and not is_path(g):
            assert brute_hindex(g) <= g.n - 3
