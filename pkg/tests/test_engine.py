import random

import pytest
from hypothesis import given, settings, strategies as st

from dyntw.engine import DynEngine, balanced_tree
from dyntw.hypergraph import Graph, vertex_edge_id

from streams import bounded_tw_stream


def test_balanced_tree_shapes():
    edges, parent, leaf_edge = balanced_tree(1)
    assert sorted(leaf_edge.values()) == [0, 1]
    with pytest.raises(ValueError):
        balanced_tree(0)


def test_init_requires_edgeless_graph():
    with pytest.raises(ValueError):
        DynEngine.init(Graph(range(3), [(0, 1)]))
    e = DynEngine.init(Graph(range(3)), 1)
    assert e.audit() == []


def test_single_edge_round_trip():
    e = DynEngine(2, 1)
    e.add_edge(0, 1)
    assert e.graph.has_edge(0, 1) and e.audit(well_linked=True) == []
    e.delete_edge(1, 0)
    assert e.graph.num_edges() == 0 and e.audit(well_linked=True) == []


def test_bad_updates_rejected():
    e = DynEngine(4, 1)
    e.add_edge(0, 1)
    with pytest.raises(ValueError):
        e.add_edge(1, 0)
    with pytest.raises(ValueError):
        e.delete_edge(2, 3)
    with pytest.raises(ValueError):
        e.add_edge(0, 9)


def test_rotate_to_root_lands_at_depth_two():
    e = DynEngine(64, 1, degree_cap=5, balance_dist=8, instrument=True)
    for i in range(63):
        e.add_edge(i, i + 1)
    xs = [vertex_edge_id(5), vertex_edge_id(40)]
    e.rotate_to_root(xs)
    assert [e.d.depth(e.d.edge_leaf[x]) for x in xs] == [2, 2]
    assert all(ev.phi_before - ev.phi_after >= 1 - 1e-9 for ev in e.rotate_events)


def test_ledger_records_every_operation():
    e = DynEngine(5, 1)
    e.add_edge(0, 1)
    e.add_edge(1, 2)
    e.toggle(0, 1)
    ops = e.ledger.ops
    assert [o.op for o in ops] == ["+", "+", "-"]
    assert all(o.size_t >= o.size >= 0 for o in ops)
    assert e.ledger.total_size_t == sum(o.size_t for o in ops)
    assert ops[-1].depth == e.d.height()


def test_conforming_defaults():
    e = DynEngine(4, 1)
    assert e.params.k_wl == 6 and e.params.conforming


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9), st.integers(3, 8), st.integers(1, 3))
def test_random_streams_keep_good_decomposition(seed, n, tw):
    rng = random.Random(seed)
    e = DynEngine(n, tw)
    for op, u, v in bounded_tw_stream(rng, n, tw, 15):
        e.add_edge(u, v) if op == "+" else e.delete_edge(u, v)
    assert e.audit(well_linked=True) == []


def test_deterministic():
    def run():
        e = DynEngine(8, 2)
        rng = random.Random(3)
        for op, u, v in bounded_tw_stream(rng, 8, 2, 30):
            e.add_edge(u, v) if op == "+" else e.delete_edge(u, v)
        return e.d.dump()
    assert run() == run()
