"""The dynamic engine: edge insertions and deletions on a good decomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import constants
from .balance import BalanceEvent, EngineParams, find_unbalanced_witness, rebalance
from .hypergraph import BOTTOM, Graph, edge_key, vertex_edge_id
from .restructure import split_to_degree
from .superbranch import RotationError, RotationSequence, SuperbranchDecomposition


@dataclass
class RotateEvent:
    """φ(X) around one rotate step, plus the leaf depths after it."""

    phi_before: float
    phi_after: float
    Phi_before: float
    Phi_after: float


@dataclass
class OpStats:
    op: str
    u: int
    v: int
    size: int
    size_t: int
    trace_new: int
    balance_steps: int
    rotate_steps: int
    phi_before: float
    phi_after: float
    depth: int
    max_degree: int  # over the nodes touched by the operation


@dataclass
class Ledger:
    ops: list[OpStats] = field(default_factory=list)
    total_size_t: int = 0

    def add(self, s: OpStats) -> None:
        self.ops.append(s)
        self.total_size_t += s.size_t


def balanced_tree(n: int) -> tuple[dict[int, frozenset[int]], dict[int, int | None], dict[int, int]]:
    """Edgeless su(G) on n vertices as a balanced binary tree under e_⊥."""
    if n < 1:
        raise ValueError("the engine needs at least one vertex")
    edges = {BOTTOM: frozenset()}
    for v in range(n):
        edges[vertex_edge_id(v)] = frozenset([v])
    parent: dict[int, int | None] = {0: None}
    leaf_edge = {0: BOTTOM}
    counter = [1]

    def fresh() -> int:
        x = counter[0]
        counter[0] += 1
        return x

    def build(lo: int, hi: int, par: int) -> None:
        x = fresh()
        parent[x] = par
        if hi - lo == 1:
            leaf_edge[x] = vertex_edge_id(lo)
            return
        mid = (lo + hi + 1) // 2
        build(lo, mid, x)
        build(mid, hi, x)

    build(0, n, 0)
    return edges, parent, leaf_edge


class DynEngine:
    """Maintains G, su(G) and a good e_⊥-rooted superbranch decomposition."""

    def __init__(self, n: int, k: int = 1, *, k_wl: int | None = None,
                 degree_cap: int = 0, balance_dist: int = 0, instrument: bool = False):
        if k < 1:
            raise ValueError("k must be at least 1")
        self.n = n
        self.k = k
        kw = k_wl if k_wl is not None else constants.internal_k(k)
        self.params = EngineParams(kw, degree_cap, balance_dist)
        self.graph = Graph(range(n))
        self.edge_ids: dict[tuple[int, int], int] = {}
        self.d = SuperbranchDecomposition.build(*balanced_tree(n))
        self.d.next_edge = n + 1
        self.ledger = Ledger()
        self.instrument = instrument
        self.rotate_events: list[RotateEvent] = []
        self.balance_events: list[BalanceEvent] = []
        self.landing_failures: list[tuple[int, ...]] = []
        self.rebalance_phi: list[tuple[float, float]] = []
        self.generation = 0
        self._sub_height: dict[int, int] = {}
        for t in self.d.postorder():
            self._refresh_height(t)

    @classmethod
    def init(cls, g: Graph, k: int = 1, **kw) -> "DynEngine":
        if g.num_edges():
            raise ValueError("initialization takes an edgeless graph")
        if g.vertices != list(range(len(g.vertices))):
            raise ValueError("vertices must be 0..n-1")
        return cls(len(g.vertices), k, **kw)

    # -- queries --

    def _refresh_height(self, t: int) -> None:
        ch = self.d.children.get(t)
        if not ch:
            self._sub_height[t] = 0
            return
        for c in ch:
            if c not in self._sub_height:  # fresh leaves are not in the trace
                self._refresh_height(c)
        self._sub_height[t] = 1 + max(self._sub_height[c] for c in ch)

    def height(self) -> int:
        """depth(T), maintained over the trace of every operation."""
        return self._sub_height[self.d.root]

    @property
    def size(self) -> int:
        """‖G‖ for the support hypergraph."""
        return len(self.d.occ) + sum(len(vs) + 1 for vs in self.d.edges.values())

    def leaf_phi(self, e: int) -> float:
        leaf = self.d.edge_leaf[e]
        p = self.d.parent[leaf]
        return self.d.depth(leaf) - math.log2(self.d.nleaves[p])

    def leaf_phi_set(self, xs) -> float:
        return sum(self.leaf_phi(e) for e in xs)

    def depth_bound(self) -> float:
        return constants.depth_bound(self.params.balance_dist, len(self.d.edges))

    # -- rotating to the root --

    def _rotatable(self, xs: list[int]) -> int | None:
        best = None
        for e in xs:
            leaf = self.d.edge_leaf[e]
            p = self.d.parent[leaf]
            g = self.d.parent[p] if p is not None else None
            if g is None or self.d.parent[g] is None:
                continue  # depth ≤ 2
            key = (self.d.nleaves[g], e)
            if best is None or key < best[0]:
                best = (key, e)
        return None if best is None else best[1]

    def rotate_step(self, xs: list[int], e: int) -> None:
        d = self.d
        leaf = d.edge_leaf[e]
        p = d.parent[leaf]
        g = d.parent[p]
        if g is None or d.parent[g] is None:
            raise RotationError(f"hyperedge {e} is not rotatable")
        depth_e = d.depth(leaf)
        below_g = []
        for f in xs:
            lf = d.edge_leaf[f]
            anc = d.ancestors(lf)
            if g in anc:
                if d.depth(lf) > depth_e:
                    raise RotationError(f"hyperedge {e} is not rotatable")
                below_g.append(lf)
        parents = []
        for lf in below_g:
            q = d.parent[lf]
            if q != g and q not in parents:
                parents.append(q)
        t = g
        for q in parents:
            t = d.contract(q, t)
        split_to_degree(d, t, below_g)

    def rotate_to_root(self, xs: list[int]) -> None:
        if len(xs) > 3:
            raise RotationError("at most three hyperedges can be rotated to the root")
        verts: set[int] = set()
        for e in xs:
            verts |= self.d.edges[e]
        if len(verts) > 2:
            raise RotationError("rotated hyperedges may span at most two vertices")
        if self.d.root_child() is None or self.d.is_leaf(self.d.root_child()):
            return
        while True:
            e = self._rotatable(xs)
            if e is None:
                break
            if self.instrument:
                pb, Pb = self.leaf_phi_set(xs), self.d.phi_total
            self.rotate_step(xs, e)
            if self.instrument:
                self.rotate_events.append(RotateEvent(pb, self.leaf_phi_set(xs), Pb, self.d.phi_total))
        if self.instrument:
            depths = tuple(self.d.depth(self.d.edge_leaf[e]) for e in xs)
            if any(x != 2 for x in depths):
                self.landing_failures.append(depths)

    # -- updates --

    def _finish(self, op: str, u: int, v: int, body) -> RotationSequence:
        d = self.d
        phi_before = d.phi_total
        rot_before = len(self.rotate_events)
        with d.recording() as outer:
            with d.recording() as first:
                body()
            seq1 = first[0]
            events: list[BalanceEvent] = []
            before = d.phi_total
            steps = rebalance(d, seq1.trace_new, self.params.balance_dist, events)
            if self.instrument:
                self.balance_events.extend(events)
                self.rebalance_phi.append((before, d.phi_total))
        seq = outer[0]
        self.generation += 1
        for t in seq.v_old:
            if t not in d.parent:
                self._sub_height.pop(t, None)
        trace = sorted(seq.trace_new, key=d.depth, reverse=True)
        for t in trace:
            self._refresh_height(t)
        touched_degree = max((d.degree(t) for t in trace), default=0)
        self.ledger.add(OpStats(op, u, v, seq.size, seq.size_t, len(seq.trace_new), steps,
                                len(self.rotate_events) - rot_before, phi_before, d.phi_total,
                                self.height(), touched_degree))
        return seq

    def add_edge(self, u: int, v: int) -> RotationSequence:
        key = edge_key(u, v)
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"vertex out of range in {u}-{v}")
        if key in self.edge_ids:
            raise ValueError(f"edge {u}-{v} already present")

        def body() -> None:
            d = self.d
            self.rotate_to_root([vertex_edge_id(key[0]), vertex_edge_id(key[1])])
            r = d.root_child()
            _, eid = d.insert_leaf(r, key)
            self.edge_ids[key] = eid
            split_to_degree(d, r, [])

        seq = self._finish("+", u, v, body)
        self.graph.add_edge(u, v)
        return seq

    def delete_edge(self, u: int, v: int) -> RotationSequence:
        key = edge_key(u, v)
        if key not in self.edge_ids:
            raise ValueError(f"edge {u}-{v} not present")

        def body() -> None:
            d = self.d
            eid = self.edge_ids[key]
            self.rotate_to_root([vertex_edge_id(key[0]), vertex_edge_id(key[1]), eid])
            d.delete_leaf(d.edge_leaf[eid])
            del self.edge_ids[key]

        seq = self._finish("-", u, v, body)
        self.graph.remove_edge(u, v)
        return seq

    def toggle(self, u: int, v: int) -> RotationSequence:
        if edge_key(u, v) in self.edge_ids:
            return self.delete_edge(u, v)
        return self.add_edge(u, v)

    # -- audits --

    def audit(self, well_linked: bool = False) -> list[str]:
        """Structural audit; with ``well_linked`` also brute-force every L[t]."""
        d = self.d
        problems = d.audit()
        if problems:
            return problems
        expected = {BOTTOM: frozenset()}
        for v in range(self.n):
            expected[vertex_edge_id(v)] = frozenset([v])
        for key, eid in self.edge_ids.items():
            expected[eid] = frozenset(key)
        if expected != d.edges:
            problems.append("decomposition hyperedges do not match su(G)")
        if set(self.edge_ids) != set(self.graph.edges()):
            problems.append("edge bookkeeping does not match the graph")
        if d.max_degree() > self.params.degree_cap:
            problems.append(f"degree {d.max_degree()} exceeds the cap {self.params.degree_cap}")
        for t in d.nodes():
            if t != d.root and find_unbalanced_witness(d, t, self.params.balance_dist) is not None:
                problems.append(f"node {t} is unbalanced")
                break
        if d.height() != self.height():
            problems.append("maintained height does not match the tree")
        if d.height() > self.depth_bound():
            problems.append("depth exceeds the balanced-depth bound")
        if well_linked:
            from .oracle import is_well_linked_brute
            from .hypergraph import Hypergraph
            g = Hypergraph(d.edges)
            for t in d.nodes():
                if t != d.root and not is_well_linked_brute(g, d.leaf_set(t)):
                    problems.append(f"L[{t}] is not well-linked")
        return problems
