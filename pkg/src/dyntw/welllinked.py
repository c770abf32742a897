"""Well-linkedness testing and decompositions built from it.

The test enumerates signatures (S1, S2) of the boundary and, for each one,
looks for a small separation of the primal graph of the set with a unit
vertex capacity max-flow.  Results are cached on a rank-relabelled copy of
the instance, since the dynamic engine asks the same questions repeatedly.
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import lru_cache

from .hypergraph import Hypergraph

WELL_LINKED = None  # verdict returned by test_well_linked


@dataclass(frozen=True)
class WitnessBipartition:
    c1: frozenset[int]
    c2: frozenset[int]
    lam1: int
    lam2: int
    lam_a: int


# --- min vertex cut -------------------------------------------------------

_INF = 1 << 30


def _min_separation(n: int, adj: tuple[tuple[int, ...], ...], s1: Iterable[int],
                    s2: Iterable[int], limit: int) -> tuple[int, frozenset[int]] | None:
    """Smallest separation (X, Y) with S1 ⊆ X and S2 ⊆ Y, if its order is < limit.

    Vertex v becomes nodes ``2v`` (in) and ``2v+1`` (out) joined by a unit
    arc; primal edges become infinite arcs out->in both ways.  The source
    feeds every in-node of S1 and every out-node of S2 drains to the sink.
    Returns the order and X, where X collects vertices with a reachable
    in- or out-node in the final residual graph; Y is the complement of the
    vertices whose out-node is reachable, so X ∩ Y is exactly the saturated
    unit arcs.
    """
    src, snk = 2 * n, 2 * n + 1
    cap: list[dict[int, int]] = [dict() for _ in range(2 * n + 2)]

    def arc(a: int, b: int, c: int) -> None:
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    for v in range(n):
        arc(2 * v, 2 * v + 1, 1)
        for w in adj[v]:
            arc(2 * v + 1, 2 * w, _INF)
    for v in s1:
        arc(src, 2 * v, _INF)
    for v in s2:
        arc(2 * v + 1, snk, _INF)

    flow = 0
    while True:
        prev = {src: src}
        dq = deque([src])
        while dq and snk not in prev:
            a = dq.popleft()
            for b, c in cap[a].items():
                if c > 0 and b not in prev:
                    prev[b] = a
                    dq.append(b)
        if snk not in prev:
            break
        # every augmenting path crosses at least one unit arc
        b = snk
        while b != src:
            a = prev[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1
        if flow >= limit:
            return None
    reach = prev
    x = frozenset(v for v in range(n) if 2 * v in reach or 2 * v + 1 in reach)
    return flow, x


@lru_cache(maxsize=200_000)
def _canonical_test(edge_sets: tuple[tuple[int, ...], ...], bd: tuple[int, ...],
                    n: int) -> frozenset[int] | None:
    """Core test on a relabelled instance with vertices 0..n-1.

    Returns the X side of a witnessing separation, or None if well-linked.
    """
    lam = len(bd)
    adj_sets: list[set[int]] = [set() for _ in range(n)]
    for vs in edge_sets:
        for i, u in enumerate(vs):
            for w in vs[i + 1:]:
                adj_sets[u].add(w)
                adj_sets[w].add(u)
    adj = tuple(tuple(sorted(s)) for s in adj_sets)
    # 0: S1 only, 1: S2 only, 2: both.  Swapping S1 and S2 gives the mirror
    # problem, so only signatures whose first one-sided vertex is in S1 are
    # tried.  A witness needs both one-sided parts nonempty, since
    # |S1 ∩ S2| ≤ |X ∩ Y| already.
    for sig in itertools.product((0, 1, 2), repeat=lam):
        a = sig.count(0)
        b = sig.count(1)
        if a == 0 or b == 0:
            continue
        first = next(c for c in sig if c != 2)
        if first != 0:
            continue
        limit = lam - max(a, b)
        both = lam - a - b
        if both >= limit:
            continue
        s1 = [bd[i] for i, c in enumerate(sig) if c != 1]
        s2 = [bd[i] for i, c in enumerate(sig) if c != 0]
        res = _min_separation(n, adj, s1, s2, limit)
        if res is None:
            continue
        _, x = res
        if _check_sides(edge_sets, bd, x, lam):
            return x
    return None


def _sides(edge_sets, x):
    c1 = [i for i, vs in enumerate(edge_sets) if x.issuperset(vs)]
    c2 = [i for i, vs in enumerate(edge_sets) if not x.issuperset(vs)]
    return c1, c2


def _local_boundary(edge_sets, bd_set, part, other):
    inside: set[int] = set()
    for i in part:
        inside.update(edge_sets[i])
    outside: set[int] = set()
    for i in other:
        outside.update(edge_sets[i])
    return (inside & outside) | (inside & bd_set)


def _check_sides(edge_sets, bd, x, lam) -> bool:
    c1, c2 = _sides(edge_sets, x)
    if not c1 or not c2:
        return False
    bd_set = set(bd)
    return (len(_local_boundary(edge_sets, bd_set, c1, c2)) < lam
            and len(_local_boundary(edge_sets, bd_set, c2, c1)) < lam)


def _canonicalize(g: Hypergraph, a: frozenset[int]):
    order = sorted(a)
    va = g.vertex_set(a)
    rank = {v: i for i, v in enumerate(sorted(va))}
    edge_sets = tuple(tuple(sorted(rank[v] for v in g.edges[e])) for e in order)
    bd = tuple(sorted(rank[v] for v in g.boundary(a)))
    return order, rank, edge_sets, bd


def test_well_linked(g: Hypergraph, a: Iterable[int]) -> WitnessBipartition | None:
    """Return None when ``a`` is well-linked in ``g``, else a witness."""
    a = frozenset(a)
    if len(a) <= 1:
        return WELL_LINKED
    bd = g.boundary(a)
    lam = len(bd)
    if lam <= 1:
        return WELL_LINKED
    order, rank, edge_sets, cbd = _canonicalize(g, a)
    x = _canonical_test(edge_sets, cbd, len(rank))
    if x is None:
        return WELL_LINKED
    c1 = frozenset(e for e, vs in zip(order, edge_sets) if x.issuperset(vs))
    c2 = a - c1
    return WitnessBipartition(c1, c2, g.lam(c1), g.lam(c2), lam)


# keep pytest from collecting the public name as a test
test_well_linked.__test__ = False  # type: ignore[attr-defined]


def is_well_linked(g: Hypergraph, a: Iterable[int]) -> bool:
    return test_well_linked(g, a) is None


def partition_into_well_linked(g: Hypergraph, x: Iterable[int]) -> list[frozenset[int]]:
    """Partition ``x`` into well-linked parts by repeatedly splitting witnesses.

    Parts come out in a deterministic order: finished parts are emitted in
    the order a LIFO worklist retires them.
    """
    x = frozenset(x)
    if not x:
        return []
    work = [x]
    done: list[frozenset[int]] = []
    while work:
        part = work.pop()
        w = test_well_linked(g, part)
        if w is None:
            done.append(part)
        else:
            work.append(w.c2)
            work.append(w.c1)
    return done


# --- branch decompositions --------------------------------------------------


@dataclass
class BranchDecomposition:
    """Unrooted tree with internal degree 3 and leaves labelled by hyperedges."""

    adj: dict[int, set[int]] = field(default_factory=dict)
    leaf_of: dict[int, int] = field(default_factory=dict)  # hyperedge -> node

    def add_node(self) -> int:
        v = len(self.adj)
        while v in self.adj:
            v += 1
        self.adj[v] = set()
        return v

    def link(self, a: int, b: int) -> None:
        self.adj[a].add(b)
        self.adj[b].add(a)

    @property
    def edge_of(self) -> dict[int, int]:
        return {node: e for e, node in self.leaf_of.items()}

    def side_leaves(self, a: int, b: int) -> frozenset[int]:
        """Hyperedges on the ``b`` side when the tree edge ab is removed."""
        edge_of = self.edge_of
        out = set()
        stack = [(b, a)]
        while stack:
            v, par = stack.pop()
            if v in edge_of:
                out.add(edge_of[v])
            for w in self.adj[v]:
                if w != par:
                    stack.append((w, v))
        return frozenset(out)

    def tree_edges(self) -> list[tuple[int, int]]:
        return sorted((a, b) for a in self.adj for b in self.adj[a] if a < b)

    def width(self, g: Hypergraph) -> int:
        return max((g.lam(self.side_leaves(a, b)) for a, b in self.tree_edges()), default=0)


def branch_decomposition(g: Hypergraph, e: int) -> BranchDecomposition:
    """Branch decomposition of ``g`` of width ≤ max(λ(e), 2·wl_e(g))."""
    if e not in g.edges:
        raise ValueError(f"hyperedge {e} not in hypergraph")
    bdec = BranchDecomposition()
    counter = itertools.count(max(g.edges) + 1)
    _bd_rec(g, e, bdec, counter)
    return bdec


def _bd_rec(g: Hypergraph, e: int, out: BranchDecomposition, counter) -> None:
    """Add a decomposition of ``g`` to ``out``; the leaf of ``e`` is registered."""
    es = sorted(g.edges)
    if len(es) == 1:
        out.leaf_of[e] = out.add_node()
        return
    if len(es) == 2:
        a, b = out.add_node(), out.add_node()
        out.link(a, b)
        out.leaf_of[es[0]], out.leaf_of[es[1]] = a, b
        return
    rest = frozenset(es) - {e}
    w = test_well_linked(g, rest)
    if w is None:
        first = min(rest)
        c1, c2 = frozenset([first]), rest - {first}
    else:
        c1, c2 = w.c1, w.c2
    hubs = []
    for part in (c1, c2):
        gi, ei = g.contract_set(g.complement(part), next(counter))
        _bd_rec(gi, ei, out, counter)
        hubs.append(out.leaf_of.pop(ei))
    # identify the two stand-in leaves into one node t and hang e from it
    h1, h2 = hubs
    for nb in list(out.adj[h2]):
        out.adj[nb].discard(h2)
        out.link(nb, h1)
    del out.adj[h2]
    leaf = out.add_node()
    out.link(h1, leaf)
    out.leaf_of[e] = leaf


@dataclass
class TreeDecomposition:
    """Unrooted tree decomposition: bags plus adjacency."""

    bags: dict[object, frozenset[int]] = field(default_factory=dict)
    adj: dict[object, set[object]] = field(default_factory=dict)

    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def max_degree(self) -> int:
        return max((len(n) for n in self.adj.values()), default=0)


def branch_to_tree(g: Hypergraph, bdec: BranchDecomposition) -> tuple[TreeDecomposition, dict[int, int]]:
    """Tree decomposition of the primal graph plus the leaf map q."""
    edge_of = bdec.edge_of
    td = TreeDecomposition()
    adh: dict[tuple[int, int], frozenset[int]] = {}
    for a, b in bdec.tree_edges():
        side = bdec.side_leaves(a, b)
        adh[(a, b)] = adh[(b, a)] = g.boundary(side)
    for v, nbs in bdec.adj.items():
        if v in edge_of:
            td.bags[v] = g.edges[edge_of[v]]
        else:
            bag: set[int] = set()
            for w in nbs:
                bag |= adh[(v, w)]
            td.bags[v] = frozenset(bag)
        td.adj[v] = set(nbs)
    return td, dict(bdec.leaf_of)


def torso_tree_decomposition(g: Hypergraph, e: int) -> tuple[TreeDecomposition, dict[int, int]]:
    return branch_to_tree(g, branch_decomposition(g, e))
