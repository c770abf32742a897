import math

import pytest
from hypothesis import given, settings, strategies as st

from dyntw.engine import balanced_tree
from dyntw.hypergraph import BOTTOM, vertex_edge_id
from dyntw.superbranch import PARENT, RotationError, SuperbranchDecomposition


def flat(n):
    """e_⊥ leaf at the root, one internal node holding all n vertex leaves."""
    edges = {BOTTOM: frozenset()}
    parent = {0: None, 1: 0}
    leaf_edge = {0: BOTTOM}
    for v in range(n):
        edges[vertex_edge_id(v)] = frozenset([v])
        parent[2 + v] = 1
        leaf_edge[2 + v] = vertex_edge_id(v)
    return SuperbranchDecomposition.build(edges, parent, leaf_edge)


def with_path_edges(n):
    d = flat(n)
    for v in range(n - 1):
        d.insert_leaf(1, {v, v + 1})
    return d


def test_balanced_eight_leaves_potential():
    d = SuperbranchDecomposition.build(*balanced_tree(8))
    assert d.audit() == []
    assert d.phi_recompute() == pytest.approx(11.0)
    assert d.phi() == pytest.approx(11.0)
    assert d.height() == 4


def test_torso_has_parent_hyperedge():
    d = with_path_edges(4)
    h = d.torso(1)
    assert PARENT in h.edges and h.edges[PARENT] == frozenset()
    assert len(h.edges) == 1 + d.degree(1)


def test_split_then_contract_round_trip():
    d = with_path_edges(4)
    kids = list(d.children[1])
    side = kids[:3]
    with d.recording() as box:
        low, up = d.split(1, side)
    assert d.audit() == []
    assert d.parent[low] == up and d.children[up][0] == low
    assert sorted(d.children[low]) == sorted(side)
    seq = box[0]
    assert seq.count("split") == 1 and seq.size == seq.rotations[0].size > 0
    m = d.contract(low, up)
    assert d.audit() == []
    assert d.children[m] == kids


def test_split_rejects_small_sides():
    d = with_path_edges(3)
    kids = d.children[1]
    with pytest.raises(RotationError):
        d.split(1, kids[:1])
    with pytest.raises(RotationError):
        d.split(1, kids[:-1] + [PARENT])  # leaves a single hyperedge on the other side


def test_contract_rejects_non_adjacent():
    d = SuperbranchDecomposition.build(*balanced_tree(8))
    a, b = [t for t in d.internal_nodes() if d.depth(t) == 3][:2]
    with pytest.raises(RotationError):
        d.contract(a, b)


def test_insert_and_delete_leaf():
    d = flat(3)
    leaf, eid = d.insert_leaf(1, {0, 2})
    assert d.audit() == []
    assert d.nleaves[1] == 4 and d.nleaves[0] == 5
    assert d.adh[d.edge_leaf[vertex_edge_id(0)]] == {0}
    with pytest.raises(RotationError):
        d.insert_leaf(1, {7})
    assert d.delete_leaf(leaf) == eid
    assert d.audit() == []
    assert d.adh[d.edge_leaf[vertex_edge_id(0)]] == frozenset()


def test_delete_needs_three_children():
    d = SuperbranchDecomposition.build(*balanced_tree(2))
    with pytest.raises(RotationError):
        d.delete_leaf(d.edge_leaf[vertex_edge_id(0)])


def test_touch_is_free():
    d = flat(3)
    with d.recording() as box:
        d.touch(1)
    assert box[0].size == 0 and box[0].v_new == {1}


def test_trace_is_ancestor_closure():
    d = SuperbranchDecomposition.build(*balanced_tree(16))
    deep = max(d.internal_nodes(), key=d.depth)
    old_anc = set(d.ancestors(deep))
    with d.recording() as box:
        d.contract(deep, d.parent[deep])
    seq = box[0]
    assert seq.trace_old == old_anc
    assert seq.size_t == seq.size + len(old_anc)
    merged = next(iter(seq.v_new))
    assert seq.trace_new == set(d.ancestors(merged))


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 9), st.lists(st.tuples(st.booleans(), st.integers(0, 10**6)), max_size=25))
def test_random_rotations_keep_invariants(n, moves):
    d = with_path_edges(n)
    replay = d.copy()
    with d.recording() as box:
        for is_split, r in moves:
            internal = [t for t in d.internal_nodes() if t != d.root]
            t = internal[r % len(internal)]
            if is_split and d.degree(t) >= 3:
                kids = d.children[t]
                k = 2 + r % (len(kids) - 1)
                d.split(t, kids[:k] if k < len(kids) else kids[1:])
            elif d.parent[t] != d.root and not d.is_leaf(d.parent[t]):
                d.contract(t, d.parent[t])
    assert d.audit() == []
    assert math.isclose(d.phi(), d.phi_recompute(), rel_tol=1e-9, abs_tol=1e-9)
    replay.apply_sequence(box[0])
    assert replay.parent == d.parent and replay.adh == d.adh
