from hypothesis import given, settings

from dyntw.hypergraph import Graph, Hypergraph, support_hypergraph
from dyntw.oracle import is_well_linked_brute, validate_tree_decomposition
from dyntw.welllinked import (branch_decomposition, branch_to_tree, is_well_linked,
                              partition_into_well_linked, test_well_linked, torso_tree_decomposition)

from strategies import hypergraph_and_set, hypergraphs


def test_path_pair_witness():
    su = support_hypergraph(Graph(range(4), [(0, 1), (1, 2), (2, 3)]))
    w = test_well_linked(su.hypergraph, {5, 7})
    assert w is not None
    assert {w.c1, w.c2} == {frozenset({5}), frozenset({7})}
    assert (w.lam1, w.lam2, w.lam_a) == (2, 2, 4)


def test_small_sets_are_well_linked():
    h = Hypergraph({1: {0, 1}, 2: {1, 2}})
    assert is_well_linked(h, set())
    assert is_well_linked(h, {1})


def test_triangle_is_well_linked_but_star_is_not():
    tri = support_hypergraph(Graph(range(3), [(0, 1), (0, 2), (1, 2)]))
    assert is_well_linked(tri.hypergraph, set(tri.edge_ids.values()))
    # the centre also lies in e_0, so two pairs of rays split the star cheaply
    star = support_hypergraph(Graph(range(5), [(0, i) for i in range(1, 5)]))
    w = test_well_linked(star.hypergraph, set(star.edge_ids.values()))
    assert w is not None and w.lam_a == 5


@settings(max_examples=300)
@given(hypergraph_and_set())
def test_agrees_with_brute_force(ha):
    h, a = ha
    assert (test_well_linked(h, a) is None) == is_well_linked_brute(h, a)


@settings(max_examples=200)
@given(hypergraph_and_set())
def test_witness_is_a_strict_split(ha):
    h, a = ha
    w = test_well_linked(h, a)
    if w is None:
        return
    assert w.c1 and w.c2 and w.c1 | w.c2 == a and not w.c1 & w.c2
    assert w.lam1 == h.lam(w.c1) < w.lam_a and w.lam2 == h.lam(w.c2) < w.lam_a


@settings(max_examples=200)
@given(hypergraph_and_set())
def test_partition_parts_are_well_linked(ha):
    h, x = ha
    parts = partition_into_well_linked(h, x)
    assert sum(map(len, parts)) == len(x) and frozenset().union(*parts) == x
    assert len(parts) <= 2 ** h.lam(x)
    assert all(is_well_linked_brute(h, p) for p in parts)


@settings(max_examples=150)
@given(hypergraphs(max_vertices=7, max_edges=9))
def test_branch_decomposition_shape(h):
    e = min(h.edges)
    bd = branch_decomposition(h, e)
    assert set(bd.leaf_of) == set(h.edges)
    for v, nbs in bd.adj.items():
        assert len(nbs) == (1 if v in bd.edge_of else 3)
    td, q = branch_to_tree(h, bd)
    assert validate_tree_decomposition(h.primal_graph(), td.bags, td.adj).ok
    assert td.max_degree() <= 3
    assert all(td.bags[q[f]] == h.edges[f] for f in h.edges)


def test_torso_decomposition_two_edges():
    h = Hypergraph({-1: {0, 1}, 4: {0, 1}})
    td, q = torso_tree_decomposition(h, -1)
    assert set(q) == {-1, 4}
    assert td.width() == 1
