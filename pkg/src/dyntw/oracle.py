"""Exponential-time ground truth used by the tests.

Nothing here shares code with the engine beyond the plain graph types.
Every routine has a hard size cap and raises ``OracleRefused`` above it,
so a test can never silently skip a check.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .hypergraph import Graph, Hypergraph, edge_key

TW_CAP = 12
WL_SET_CAP = 22
WL_NUMBER_CAP = 12
MIS_CAP = 20
COLOR_CAP = 12


class OracleRefused(ValueError):
    """Input above an oracle's size cap."""


def _need(ok: bool, what: str) -> None:
    if not ok:
        raise OracleRefused(what)


# --- treewidth ----------------------------------------------------------------


def _relabel(g: Graph) -> tuple[int, list[int]]:
    vs = g.vertices
    idx = {v: i for i, v in enumerate(vs)}
    nb = [0] * len(vs)
    for v in vs:
        for w in g.adj[v]:
            nb[idx[v]] |= 1 << idx[w]
    return len(vs), nb


def exact_treewidth(g: Graph) -> int:
    """Treewidth via the subset recurrence over elimination prefixes."""
    n, nb = _relabel(g)
    _need(n <= TW_CAP, f"exact_treewidth needs at most {TW_CAP} vertices, got {n}")
    if n == 0:
        return -1

    def q_size(s: int, v: int) -> int:
        # vertices outside s ∪ {v} reachable from v through s
        seen = 1 << v
        frontier = 1 << v
        reach_out = 0
        while frontier:
            i = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = nb[i] & ~seen
            seen |= new
            reach_out |= new & ~s
            frontier |= new & s
        return bin(reach_out & ~(1 << v)).count("1")

    full = (1 << n) - 1
    tw = {0: -1}
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            s = 0
            for i in combo:
                s |= 1 << i
            best = n
            for v in combo:
                rest = s & ~(1 << v)
                val = max(tw[rest], q_size(rest, v))
                if val < best:
                    best = val
            tw[s] = best
    return tw[full]


def treewidth_by_orders(g: Graph) -> int:
    """Treewidth as the best elimination order over all permutations (n ≤ 8)."""
    n, nb = _relabel(g)
    _need(n <= 8, "treewidth_by_orders is capped at 8 vertices")
    if n == 0:
        return -1
    best = n - 1
    for order in itertools.permutations(range(n)):
        adj = [set(j for j in range(n) if nb[i] >> j & 1) for i in range(n)]
        alive = set(range(n))
        width = 0
        for v in order:
            nbrs = adj[v] & alive
            width = max(width, len(nbrs))
            if width >= best:
                break
            for a in nbrs:
                adj[a] |= nbrs - {a}
            alive.discard(v)
        best = min(best, width)
    return best


# --- well-linkedness -------------------------------------------------------------


def _vertex_masks(g: Hypergraph, a: Iterable[int]):
    verts = sorted(g.vertices)
    _need(len(verts) <= 63, "well-linkedness oracle handles at most 63 vertices")
    idx = {v: i for i, v in enumerate(verts)}

    def mask(vs) -> int:
        m = 0
        for v in vs:
            m |= 1 << idx[v]
        return m

    a = sorted(a)
    inside = [mask(g.edges[e]) for e in a]
    outside = 0
    for e, vs in g.edges.items():
        if e not in set(a):
            outside |= mask(vs)
    return inside, outside


def _subset_unions(masks: list[int]) -> np.ndarray:
    u = np.zeros(1, dtype=np.uint64)
    for m in masks:
        u = np.concatenate([u, u | np.uint64(m)])
    return u


@lru_cache(maxsize=100_000)
def _brute_masks(inside: tuple[int, ...], outside: int) -> bool:
    k = len(inside)
    tot = 0
    for m in inside:
        tot |= m
    lam = bin(tot & outside).count("1")
    if k <= 1 or lam <= 1:
        return True
    # the last hyperedge always sits in C2, so C1 ranges over subsets of the
    # first k-1 hyperedges; C1 = ∅ is harmless since then λ(C2) = λ(A).
    left = _subset_unions(list(inside[:-1]))
    # union of the complement within the first k-1, plus the last hyperedge
    full_idx = (1 << (k - 1)) - 1
    comp = left[full_idx - np.arange(full_idx + 1)] | np.uint64(inside[-1])
    out = np.uint64(outside)
    bd1 = np.bitwise_count(left & (comp | out))
    bd2 = np.bitwise_count(comp & (left | out))
    bad = (bd1 < lam) & (bd2 < lam)
    return not bool(bad.any())


def is_well_linked_brute(g: Hypergraph, a: Iterable[int]) -> bool:
    """Exhaustive check of every bipartition of ``a``.

    Up to ``WL_SET_CAP`` hyperedges the bipartitions are enumerated
    directly.  Larger sets are handled by :func:`is_well_linked_by_closures`,
    which enumerates vertex subsets instead and is exact for the same
    question.
    """
    a = sorted(set(a))
    inside, outside = _vertex_masks(g, a)
    if len(a) <= WL_SET_CAP:
        return _brute_masks(tuple(sorted(inside)), outside)
    return _closure_masks(tuple(sorted(inside)), outside)


def is_well_linked_by_closures(g: Hypergraph, a: Iterable[int]) -> bool:
    """Well-linkedness by enumerating Z ⊆ V(A) and C1 = {e : V(e) ⊆ Z}.

    Any violating bipartition stays violating after moving every hyperedge
    inside V(C1) over to C1: V(C1) is unchanged and V(C2) only shrinks, so
    neither order grows.  Hence it suffices to try these closed sides.
    """
    a = sorted(set(a))
    inside, outside = _vertex_masks(g, a)
    return _closure_masks(tuple(sorted(inside)), outside)


@lru_cache(maxsize=100_000)
def _closure_masks(inside: tuple[int, ...], outside: int) -> bool:
    tot = 0
    for m in inside:
        tot |= m
    lam = bin(tot & outside).count("1")
    if len(inside) <= 1 or lam <= 1:
        return True
    bits = [1 << i for i in range(64) if tot >> i & 1]
    _need(len(bits) <= 24, "closure enumeration is capped at 24 vertices")
    out = np.uint64(outside)
    # subsets of V(A) as masks in the original bit positions
    zs = _subset_unions(bits)
    u1 = np.zeros_like(zs)
    u2 = np.zeros_like(zs)
    for m in inside:
        mm = np.uint64(m)
        fits = (zs & mm) == mm
        u1 = np.where(fits, u1 | mm, u1)
        u2 = np.where(fits, u2, u2 | mm)
    bd1 = np.bitwise_count(u1 & (u2 | out))
    bd2 = np.bitwise_count(u2 & (u1 | out))
    return not bool(((bd1 < lam) & (bd2 < lam)).any())


def brute_witness(g: Hypergraph, a: Iterable[int]) -> tuple[frozenset[int], frozenset[int]] | None:
    """Some violating bipartition, found by plain enumeration (small inputs)."""
    a = sorted(set(a))
    _need(len(a) <= 14, "brute_witness is capped at 14 hyperedges")
    lam = g.lam(a)
    for r in range(1, len(a)):
        for c1 in itertools.combinations(a, r):
            c1 = frozenset(c1)
            c2 = frozenset(a) - c1
            if g.lam(c1) < lam and g.lam(c2) < lam:
                return c1, c2
    return None


def well_linked_number_brute(g: Hypergraph, exclude: int | None = None) -> int:
    """max λ(A) over well-linked A (avoiding ``exclude`` when given)."""
    es = sorted(e for e in g.edges if e != exclude)
    _need(len(es) <= WL_NUMBER_CAP, f"well_linked_number_brute needs ≤ {WL_NUMBER_CAP} hyperedges")
    best = 0
    for r in range(1, len(es) + 1):
        for a in itertools.combinations(es, r):
            lam = g.lam(a)
            if lam > best and is_well_linked_brute(g, a):
                best = lam
    return best


# --- tree decomposition validation ----------------------------------------------


@dataclass
class Validation:
    ok: bool
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def validate_tree_decomposition(
    g: Graph,
    bags: Mapping[object, Iterable[int]],
    adj: Mapping[object, Iterable[object]],
    edges_of: Mapping[object, Iterable[tuple[int, int]]] | None = None,
    root: object | None = None,
) -> Validation:
    """Check the tree decomposition axioms, plus edge ownership if annotated."""
    problems: list[str] = []
    bags = {t: frozenset(b) for t, b in bags.items()}
    adj = {t: set(n) for t, n in adj.items()}
    nodes = list(bags)
    if set(adj) != set(bags):
        problems.append("adjacency and bag keys differ")
        return Validation(False, problems)
    for t, nbs in adj.items():
        for s in nbs:
            if t not in adj.get(s, ()):
                problems.append(f"asymmetric adjacency {t!r}-{s!r}")
    n_edges = sum(len(n) for n in adj.values()) // 2
    if nodes:
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            t = stack.pop()
            for s in adj[t]:
                if s not in seen:
                    seen.add(s)
                    stack.append(s)
        if len(seen) != len(nodes) or n_edges != len(nodes) - 1:
            problems.append("underlying graph is not a tree")
    elif g.adj:
        problems.append("empty decomposition of a nonempty graph")
    occ: dict[int, list[object]] = {}
    for t, b in bags.items():
        for v in b:
            occ.setdefault(v, []).append(t)
    for v in g.vertices:
        if v not in occ:
            problems.append(f"vertex {v} is in no bag")
    for u, v in g.edges():
        if not any(u in b and v in b for b in bags.values()):
            problems.append(f"edge {u}-{v} is in no bag")
    for v, ts in occ.items():
        tset = set(ts)
        seen = {ts[0]}
        stack = [ts[0]]
        while stack:
            t = stack.pop()
            for s in adj[t]:
                if s in tset and s not in seen:
                    seen.add(s)
                    stack.append(s)
        if seen != tset:
            problems.append(f"bags containing vertex {v} are disconnected")
    if edges_of is not None and not problems:
        if root is None:
            problems.append("edge annotation needs a root")
        else:
            depth = {root: 0}
            stack = [root]
            while stack:
                t = stack.pop()
                for s in adj[t]:
                    if s not in depth:
                        depth[s] = depth[t] + 1
                        stack.append(s)
            owner: dict[tuple[int, int], object] = {}
            for t, es in edges_of.items():
                for u, v in es:
                    key = edge_key(u, v)
                    if key in owner:
                        problems.append(f"edge {key} annotated twice")
                    owner[key] = t
            if set(owner) != set(g.edges()):
                problems.append("edge annotations do not partition E(G)")
            for key, t in owner.items():
                u, v = key
                cover = [s for s, b in bags.items() if u in b and v in b]
                dmin = min((depth[s] for s in cover), default=None)
                tops = [s for s in cover if depth[s] == dmin]
                if tops != [t]:
                    problems.append(f"edge {key} is not owned by its unique shallowest covering node")
    return Validation(not problems, problems)


# --- problem oracles ------------------------------------------------------------------


def _subset_table(nb: list[int]) -> np.ndarray:
    return _subset_unions(nb)


def mis_brute(g: Graph) -> int:
    n, nb = _relabel(g)
    _need(n <= MIS_CAP, f"mis_brute needs at most {MIS_CAP} vertices")
    if n == 0:
        return 0
    nu = _subset_table(nb)
    subsets = np.arange(1 << n, dtype=np.uint64)
    indep = (nu & subsets) == 0
    return int(np.bitwise_count(subsets[indep]).max())


def domset_brute(g: Graph) -> int:
    n, nb = _relabel(g)
    _need(n <= MIS_CAP, f"domset_brute needs at most {MIS_CAP} vertices")
    if n == 0:
        return 0
    closed = [nb[i] | (1 << i) for i in range(n)]
    cover = _subset_table(closed)
    subsets = np.arange(1 << n, dtype=np.uint64)
    full = np.uint64((1 << n) - 1)
    dom = cover == full
    return int(np.bitwise_count(subsets[dom]).min())


def color_brute(g: Graph, q: int = 3) -> bool:
    """Exhaustive backtracking search for a proper q-coloring."""
    n, nb = _relabel(g)
    _need(n <= COLOR_CAP, f"color_brute needs at most {COLOR_CAP} vertices")
    colors = [-1] * n

    def go(i: int) -> bool:
        if i == n:
            return True
        for c in range(q):
            if all(colors[j] != c for j in range(i) if nb[i] >> j & 1):
                colors[i] = c
                if go(i + 1):
                    return True
        colors[i] = -1
        return False

    return go(0)
