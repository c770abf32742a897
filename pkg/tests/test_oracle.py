import pytest
from hypothesis import assume, given, settings

from dyntw.hypergraph import Graph, Hypergraph, support_hypergraph
from dyntw.oracle import (OracleRefused, brute_witness, color_brute, domset_brute, exact_treewidth,
                          is_well_linked_brute, is_well_linked_by_closures, mis_brute,
                          treewidth_by_orders, validate_tree_decomposition, well_linked_number_brute)

from strategies import graphs, hypergraph_and_set


def cycle(n):
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(range(n), [(u, v) for u in range(n) for v in range(u + 1, n)])


def grid(r, c):
    g = Graph(range(r * c))
    for i in range(r):
        for j in range(c):
            if j + 1 < c:
                g.add_edge(i * c + j, i * c + j + 1)
            if i + 1 < r:
                g.add_edge(i * c + j, (i + 1) * c + j)
    return g


def test_treewidth_known_values():
    assert exact_treewidth(Graph(range(6), [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)])) == 1
    assert exact_treewidth(complete(5)) == 4
    assert exact_treewidth(grid(3, 3)) == 3
    assert exact_treewidth(cycle(7)) == 2
    assert exact_treewidth(Graph(range(3))) == 0


@settings(max_examples=150, deadline=None)
@given(graphs(max_vertices=8))
def test_treewidth_two_formulations_agree(g):
    assert exact_treewidth(g) == treewidth_by_orders(g)


def test_caps_refuse():
    with pytest.raises(OracleRefused):
        exact_treewidth(Graph(range(13)))
    with pytest.raises(OracleRefused):
        mis_brute(Graph(range(21)))
    with pytest.raises(OracleRefused):
        well_linked_number_brute(Hypergraph({i: {i} for i in range(13)}))


def test_problem_oracles_small_facts():
    c5 = cycle(5)
    assert mis_brute(c5) == 2 and domset_brute(c5) == 2 and color_brute(c5, 3)
    assert not color_brute(complete(4), 3)
    assert mis_brute(Graph(range(6))) == 6 and domset_brute(Graph(range(6))) == 6
    assert not color_brute(cycle(5), 2) and color_brute(cycle(6), 2)


def test_path_pair_is_not_well_linked():
    su = support_hypergraph(Graph(range(4), [(0, 1), (1, 2), (2, 3)]))
    assert not is_well_linked_brute(su.hypergraph, {5, 7})
    assert brute_witness(su.hypergraph, {5, 7}) is not None
    assert is_well_linked_brute(su.hypergraph, {5})


@settings(max_examples=200)
@given(hypergraph_and_set())
def test_closure_enumeration_matches_bipartitions(ha):
    h, a = ha
    assert is_well_linked_by_closures(h, a) == is_well_linked_brute(h, a)


def test_well_linked_number_of_pair():
    h = Hypergraph({1: {0, 1, 2}, 2: {0, 1, 2}})
    assert well_linked_number_brute(h) == 3
    assert well_linked_number_brute(h, exclude=1) == 3


@settings(max_examples=40, deadline=None)
@given(graphs(max_vertices=5, min_vertices=2))
def test_well_linked_number_brackets_treewidth(g):
    assume(g.num_edges() >= 1 and 1 + len(g.vertices) + g.num_edges() <= 12)
    tw = exact_treewidth(g)
    wl = well_linked_number_brute(support_hypergraph(g).hypergraph)
    assert tw + 1 <= wl <= 3 * (tw + 1)


def test_validation_accepts_single_bag():
    g = complete(3)
    assert validate_tree_decomposition(g, {0: {0, 1, 2}}, {0: set()}).ok


def test_validation_names_split_vertex():
    g = Graph(range(3), [(0, 1), (1, 2)])
    bags = {0: {0, 1}, 1: {1, 2}, 2: {0}}
    adj = {0: {1}, 1: {0, 2}, 2: {1}}
    v = validate_tree_decomposition(g, bags, adj)
    assert not v.ok and any("vertex 0" in p for p in v.problems)


def test_validation_checks_edge_ownership():
    g = Graph(range(3), [(0, 1), (1, 2)])
    bags = {"r": {0, 1}, "c": {1, 2}}
    adj = {"r": {"c"}, "c": {"r"}}
    good = {"r": [(0, 1)], "c": [(1, 2)]}
    assert validate_tree_decomposition(g, bags, adj, good, "r").ok
    deep = {"r": [], "c": [(1, 2), (0, 1)]}
    assert not validate_tree_decomposition(g, bags, adj, deep, "r").ok
    twice = {"r": [(0, 1)], "c": [(1, 2), (0, 1)]}
    assert not validate_tree_decomposition(g, bags, adj, twice, "r").ok
