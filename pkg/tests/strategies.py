"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from dyntw.hypergraph import Graph, Hypergraph


@st.composite
def hypergraphs(draw, max_vertices=8, max_edges=10):
    nv = draw(st.integers(2, max_vertices))
    m = draw(st.integers(2, max_edges))
    edges = {i: frozenset(draw(st.sets(st.integers(0, nv - 1), min_size=1, max_size=3)))
             for i in range(m)}
    return Hypergraph(edges)


@st.composite
def hypergraph_and_set(draw, **kw):
    h = draw(hypergraphs(**kw))
    a = draw(st.sets(st.sampled_from(sorted(h.edges)), min_size=1))
    return h, frozenset(a)


@st.composite
def graphs(draw, max_vertices=8, min_vertices=1):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return Graph(range(n), chosen)
