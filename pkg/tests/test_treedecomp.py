import random

import pytest
from hypothesis import given, settings, strategies as st

from dyntw.engine import DynEngine
from dyntw.treedecomp import (NodeRec, PrefixRebuildDescription, apply_description, build_full,
                              GlueState, graph_from_export, validate_export)

from streams import bounded_tw_stream


def test_edgeless_export():
    e = DynEngine(6, 1)
    td = build_full(e)
    assert td.width() <= 0
    assert validate_export(e.graph, td).ok
    assert td.max_children() <= 2
    assert td.nodes[td.root].parent is None


def test_single_vertex_export():
    td = build_full(DynEngine(1, 1))
    assert [r.bag for r in td.nodes.values()].count(frozenset({0})) >= 1


def test_serialization_format():
    e = DynEngine(3, 1)
    e.add_edge(0, 1)
    lines = build_full(e).serialize().splitlines()
    assert lines[0].startswith("0 - bag=(")
    for i, line in enumerate(lines):
        ident, par, bag, edges = line.split(" ")
        assert int(ident) == i and (par == "-" or int(par) < i)
        assert bag.startswith("bag=(") and edges.startswith("edges=(")
    assert sum("edges=((0,1))" in ln for ln in lines) == 1


def test_identity_description():
    e = DynEngine(5, 1)
    e.add_edge(0, 1)
    td = build_full(e)
    before = td.serialize()
    root = td.root
    prefix = {root}
    u = PrefixRebuildDescription(frozenset(prefix), {root: td.nodes[root]},
                                 {c: root for c in td.children[root]}, root)
    apply_description(td, u)
    assert td.serialize() == before


def test_dangling_attachment_rejected():
    e = DynEngine(4, 1)
    td = build_full(e)
    root = td.root
    child = td.children[root][0]
    u = PrefixRebuildDescription(frozenset({root}), {root: td.nodes[root]}, {child: ("X", 1)}, root)
    with pytest.raises(ValueError):
        apply_description(td, u)
    u = PrefixRebuildDescription(frozenset({("nope",)}), {}, {}, root)
    with pytest.raises(ValueError):
        apply_description(td, u)


def test_untouched_nodes_keep_records():
    e = DynEngine(40, 1, degree_cap=5, balance_dist=8)
    for i in range(39):
        e.add_edge(i, i + 1)
    gs = GlueState(e)
    old = dict(gs.td.nodes)
    desc = gs.update(e.add_edge(0, 2))
    for x, rec in gs.td.nodes.items():
        if x not in desc.new_nodes:
            assert old[x].bag == rec.bag and old[x].edges == rec.edges
    assert desc.size < len(gs.td.nodes)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9), st.integers(3, 9), st.integers(1, 3))
def test_incremental_export_matches_rebuild(seed, n, tw):
    rng = random.Random(seed)
    e = DynEngine(n, tw, degree_cap=5, balance_dist=8)
    gs = GlueState(e)
    for op, u, v in bounded_tw_stream(rng, n, tw, 12):
        gs.update(e.add_edge(u, v) if op == "+" else e.delete_edge(u, v))
        full = build_full(e)
        assert gs.td.serialize() == full.serialize()
        assert validate_export(e.graph, gs.td).ok
        assert gs.td.max_children() <= 2
    assert graph_from_export(gs.td, range(n)) == e.graph
