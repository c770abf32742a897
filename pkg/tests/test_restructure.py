import pytest

from dyntw.hypergraph import Hypergraph
from dyntw.oracle import is_well_linked_brute
from dyntw.restructure import SplitBudget, pinned_alpha, split_once, split_to_degree
from dyntw.superbranch import RotationError

from test_superbranch import flat, with_path_edges


def test_budget_thresholds():
    b = SplitBudget(k_wl=2, alpha=1, n_pinned=3)
    assert b.single == 3 + 8
    assert b.loop == max(11, 17)
    with pytest.raises(ValueError):
        SplitBudget(0, 0, 0)


def test_split_once_keeps_pinned_child_on_top():
    d = with_path_edges(6)
    pin = d.children[1][0]
    res = split_once(d, 1, [pin])
    assert res is not None
    low, up = res
    assert d.parent[pin] == up
    assert d.audit() == []


def test_split_once_needs_a_pin():
    d = with_path_edges(4)
    with pytest.raises(RotationError):
        split_once(d, 1, [])


def test_split_to_degree_leaves_well_linked_small_nodes():
    d = with_path_edges(8)
    pins = d.children[1][:2]
    top = split_to_degree(d, 1, pins)
    assert all(d.parent[p] == top for p in pins)
    assert d.audit() == []
    h = Hypergraph(d.edges)
    for t in d.internal_nodes():
        if t != d.root:
            assert is_well_linked_brute(h, d.leaf_set(t))
    assert d.max_degree() <= 4


def test_split_to_degree_on_isolated_vertices():
    # leaves with empty adhesions: every node ends with at most three children
    d = flat(8)
    split_to_degree(d, 1)
    assert d.audit() == []
    assert d.max_degree() <= 3


def test_pinned_alpha():
    d = with_path_edges(4)
    kids = d.children[1]
    assert pinned_alpha(d, 1, kids) == len(set().union(*(d.adh[c] for c in kids)))
