"""Hypergraphs, boundaries and the contraction calculus.

A hypergraph here is a mapping from integer hyperedge ids to frozensets of
vertices.  Everything in the package (support hypergraphs, torsos, branch
decomposition subproblems) is expressed with this one class.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Normalized key of the simple-graph edge ``uv``."""
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Small undirected simple graph with adjacency sets."""

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        self.adj: dict[int, set[int]] = {v: set() for v in vertices}
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(range(n))

    @property
    def vertices(self) -> list[int]:
        return sorted(self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return sorted({edge_key(u, v) for u in self.adj for v in self.adj[u]})

    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj.get(u, ())

    def add_vertex(self, v: int) -> None:
        self.adj.setdefault(v, set())

    def add_edge(self, u: int, v: int) -> None:
        edge_key(u, v)
        if self.has_edge(u, v):
            raise ValueError(f"duplicate edge {u}-{v}")
        self.adj.setdefault(u, set()).add(v)
        self.adj.setdefault(v, set()).add(u)

    def remove_edge(self, u: int, v: int) -> None:
        if not self.has_edge(u, v):
            raise ValueError(f"missing edge {u}-{v}")
        self.adj[u].discard(v)
        self.adj[v].discard(u)

    def copy(self) -> "Graph":
        g = Graph()
        g.adj = {v: set(nb) for v, nb in self.adj.items()}
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={len(self.adj)}, edges={self.edges()})"


class Hypergraph:
    """A hypergraph given by ``{hyperedge_id: frozenset(vertices)}``.

    The vertex set is always the union of the hyperedges, so there are no
    isolated vertices by construction.
    """

    __slots__ = ("edges", "_incidence")

    def __init__(self, edges: Mapping[int, Iterable[int]] | None = None):
        self.edges: dict[int, frozenset[int]] = {}
        self._incidence: dict[int, set[int]] | None = None
        if edges:
            for e, vs in edges.items():
                self.edges[e] = frozenset(vs)

    def __contains__(self, e: int) -> bool:
        return e in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {sorted(vs)}" for e, vs in sorted(self.edges.items()))
        return f"Hypergraph({{{body}}})"

    @property
    def vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for vs in self.edges.values():
            out |= vs
        return frozenset(out)

    @property
    def incidence(self) -> dict[int, set[int]]:
        """Vertex -> ids of hyperedges containing it."""
        if self._incidence is None:
            inc: dict[int, set[int]] = {}
            for e, vs in self.edges.items():
                for v in vs:
                    inc.setdefault(v, set()).add(e)
            self._incidence = inc
        return self._incidence

    def size(self) -> int:
        """||G|| = |V(G)| + sum over hyperedges of (|V(e)| + 1)."""
        return len(self.vertices) + sum(len(vs) + 1 for vs in self.edges.values())

    def add_edge(self, e: int, vs: Iterable[int]) -> None:
        if e in self.edges:
            raise ValueError(f"hyperedge {e} already present")
        self.edges[e] = frozenset(vs)
        self._incidence = None

    def remove_edge(self, e: int) -> frozenset[int]:
        self._incidence = None
        return self.edges.pop(e)

    def copy(self) -> "Hypergraph":
        h = Hypergraph()
        h.edges = dict(self.edges)
        return h

    def fresh_id(self) -> int:
        return max(self.edges, default=-1) + 1

    def _check(self, a: Iterable[int]) -> frozenset[int]:
        a = frozenset(a)
        unknown = a - self.edges.keys()
        if unknown:
            raise ValueError(f"unknown hyperedge ids {sorted(unknown)}")
        return a

    def vertex_set(self, a: Iterable[int]) -> frozenset[int]:
        """V(A), the union of the hyperedges in ``a``."""
        out: set[int] = set()
        for e in a:
            out |= self.edges[e]
        return frozenset(out)

    def complement(self, a: Iterable[int]) -> frozenset[int]:
        return frozenset(self.edges.keys() - frozenset(a))

    def boundary(self, a: Iterable[int]) -> frozenset[int]:
        """bd(A): vertices touching a hyperedge of A and one outside it."""
        a = self._check(a)
        inside: Counter[int] = Counter()
        for e in a:
            inside.update(self.edges[e])
        inc = self.incidence
        return frozenset(v for v, c in inside.items() if c < len(inc[v]))

    def lam(self, a: Iterable[int]) -> int:
        return len(self.boundary(a))

    def is_normal(self) -> bool:
        return all(len(es) >= 2 for es in self.incidence.values())

    def contract_set(self, a: Iterable[int], new_id: int | None = None) -> tuple["Hypergraph", int]:
        """G ◁ A: replace the hyperedges of ``a`` by one hyperedge on bd(A).

        Returns the new hypergraph and the id of the replacing hyperedge.
        """
        a = self._check(a)
        if a == self.edges.keys():
            raise ValueError("cannot contract the whole hyperedge set")
        if new_id is None:
            new_id = self.fresh_id()
        elif new_id in self.edges and new_id not in a:
            raise ValueError(f"id {new_id} already used outside the contracted set")
        bd = self.boundary(a)
        h = Hypergraph()
        h.edges = {e: vs for e, vs in self.edges.items() if e not in a}
        h.edges[new_id] = bd
        return h, new_id

    def induced(self, a: Iterable[int]) -> "Hypergraph":
        """The hypergraph with hyperedge set ``a`` and vertex set V(A)."""
        h = Hypergraph()
        h.edges = {e: self.edges[e] for e in a}
        return h

    def primal_graph(self) -> Graph:
        g = Graph(self.vertices)
        seen: set[tuple[int, int]] = set()
        for vs in self.edges.values():
            vl = sorted(vs)
            for i, u in enumerate(vl):
                for w in vl[i + 1:]:
                    if (u, w) not in seen:
                        seen.add((u, w))
                        g.add_edge(u, w)
        return g


def expand_set(b: Iterable[int], a: Iterable[int], contracted_id: int) -> frozenset[int]:
    """B ▷ A: map a hyperedge set of G ◁ A back to G."""
    b = frozenset(b)
    if contracted_id not in b:
        return b
    return (b - {contracted_id}) | frozenset(a)


def submodularity_check(g: Hypergraph, a: Iterable[int], b: Iterable[int]) -> bool:
    a, b = frozenset(a), frozenset(b)
    return g.lam(a | b) + g.lam(a & b) <= g.lam(a) + g.lam(b)


# --- support hypergraphs -------------------------------------------------

BOTTOM = 0


def vertex_edge_id(v: int) -> int:
    """Hyperedge id of the singleton e_v in a support hypergraph."""
    return v + 1


@dataclass
class SupportHypergraph:
    """su(G) together with the bookkeeping of which hyperedge is which.

    Hyperedge ids: ``0`` is e_⊥, ``v + 1`` is e_v, and graph edges get ids
    from ``n + 1`` upward in insertion order.  Ids are never recycled.
    """

    n: int
    hypergraph: Hypergraph = field(default_factory=Hypergraph)
    edge_ids: dict[tuple[int, int], int] = field(default_factory=dict)
    next_id: int = 0

    @classmethod
    def of(cls, g: Graph) -> "SupportHypergraph":
        vs = g.vertices
        if vs != list(range(len(vs))):
            raise ValueError("support hypergraphs need vertices 0..n-1")
        su = cls(n=len(vs))
        su.hypergraph.add_edge(BOTTOM, ())
        for v in vs:
            su.hypergraph.add_edge(vertex_edge_id(v), (v,))
        su.next_id = len(vs) + 1
        for u, v in g.edges():
            su.add_graph_edge(u, v)
        return su

    def add_graph_edge(self, u: int, v: int, eid: int | None = None) -> int:
        key = edge_key(u, v)
        if key in self.edge_ids:
            raise ValueError(f"duplicate edge {u}-{v}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge {u}-{v} has an endpoint outside 0..{self.n - 1}")
        if eid is None:
            eid = self.next_id
        self.next_id = max(self.next_id, eid + 1)
        self.hypergraph.add_edge(eid, key)
        self.edge_ids[key] = eid
        return eid

    def remove_graph_edge(self, u: int, v: int) -> int:
        key = edge_key(u, v)
        eid = self.edge_ids.pop(key)
        self.hypergraph.remove_edge(eid)
        return eid

    def graph(self) -> Graph:
        return Graph(range(self.n), self.edge_ids)


def support_hypergraph(g: Graph) -> SupportHypergraph:
    return SupportHypergraph.of(g)
