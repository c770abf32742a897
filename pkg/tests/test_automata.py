import random

import pytest
from hypothesis import given, settings

from dyntw.automata import (BOT, EMPTY, by_name, dom_set_automaton, mis_automaton, prds_init, prds_query,
                            prds_update, q_color_automaton)
from dyntw.engine import DynEngine
from dyntw.hypergraph import Graph
from dyntw.oracle import color_brute, domset_brute, mis_brute
from dyntw.treedecomp import GlueState, build_full

from strategies import graphs
from streams import bounded_tw_stream


def engine_for(g: Graph, **kw) -> DynEngine:
    e = DynEngine(len(g.vertices), 3, **kw)
    for u, v in g.edges():
        e.add_edge(u, v)
    return e


def answer(g, a):
    return prds_init(build_full(engine_for(g)), a).root_answer()


def complete(n):
    return Graph(range(n), [(u, v) for u in range(n) for v in range(u + 1, n)])


def test_known_answers():
    c5 = Graph(range(5), [(i, (i + 1) % 5) for i in range(5)])
    star = Graph(range(6), [(0, i) for i in range(1, 6)])
    assert answer(Graph(range(7)), mis_automaton()) == 7
    assert answer(complete(4), mis_automaton()) == 1
    assert answer(complete(4), q_color_automaton(3)) is False
    assert answer(c5, q_color_automaton(3)) is True
    assert answer(c5, q_color_automaton(2)) is False
    assert answer(star, dom_set_automaton()) == 1


def test_transition_with_missing_child():
    a = mis_automaton()
    leaf = a.iota(frozenset({1, 2}))
    st = a.delta(frozenset({1, 2}), frozenset({1, 2}), EMPTY, [(1, 2)], leaf, BOT)
    assert a.answer(st, frozenset({1, 2})) == 1


def test_registry():
    assert by_name("color3").q == 3
    with pytest.raises(ValueError):
        by_name("treewidth")
    with pytest.raises(ValueError):
        q_color_automaton(1)


def test_leaf_query_is_iota():
    e = engine_for(Graph(range(3), [(0, 1)]))
    run = prds_init(build_full(e), mis_automaton())
    leaves = [x for x in run.td.nodes if not run.td.children[x]]
    for x in leaves:
        assert prds_query(run, x) == mis_automaton().iota(run.td.nodes[x].bag)
    with pytest.raises(ValueError):
        prds_query(run, ("missing",))


@settings(max_examples=40, deadline=None)
@given(graphs(max_vertices=8))
def test_static_answers_match_brute_force(g):
    td = build_full(engine_for(g))
    assert prds_init(td, mis_automaton()).root_answer() == mis_brute(g)
    assert prds_init(td, q_color_automaton(3)).root_answer() == color_brute(g, 3)
    assert prds_init(td, dom_set_automaton()).root_answer() == domset_brute(g)


def test_dynamic_run_is_local_and_correct():
    rng = random.Random(11)
    e = DynEngine(9, 2, degree_cap=5, balance_dist=8)
    gs = GlueState(e)
    run = prds_init(gs.td, mis_automaton())
    for op, u, v in bounded_tw_stream(rng, 9, 2, 40):
        old = dict(run.states)
        desc = gs.update(e.add_edge(u, v) if op == "+" else e.delete_edge(u, v))
        count = prds_update(run, desc)
        assert count <= len(desc.new_nodes)
        for x, s in run.states.items():
            if x not in desc.new_nodes:
                assert s is old[x]
        assert run.root_answer() == mis_brute(e.graph)
        assert run.check()
    fresh = prds_init(build_full(e), mis_automaton())
    assert fresh.states == run.states
