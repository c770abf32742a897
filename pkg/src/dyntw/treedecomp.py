"""Exporting the engine's decomposition as an annotated binary tree decomposition.

Exported node ids are derived from superbranch node ids so that parts of the
export below untouched superbranch nodes keep their ids across updates:

* ``("L", l)`` is the node of leaf ``l`` with bag V(L(l)),
* ``("E", c)`` sits on the tree edge from ``c`` to its parent, bag adh(c),
* ``("T", t, i)`` is node ``i`` of the torso decomposition T_t.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .hypergraph import Graph, edge_key
from .superbranch import PARENT, RotationSequence
from .welllinked import torso_tree_decomposition

NodeId = tuple


@dataclass(frozen=True)
class NodeRec:
    parent: NodeId | None
    bag: frozenset[int]
    edges: frozenset[tuple[int, int]]


@dataclass
class AnnotatedTreeDecomposition:
    """Rooted tree with bags and owned edges at every node."""

    nodes: dict[NodeId, NodeRec] = field(default_factory=dict)
    children: dict[NodeId, list[NodeId]] = field(default_factory=dict)
    root: NodeId | None = None

    def copy(self) -> "AnnotatedTreeDecomposition":
        return AnnotatedTreeDecomposition(dict(self.nodes),
                                          {x: list(c) for x, c in self.children.items()}, self.root)

    def width(self) -> int:
        return max((len(r.bag) for r in self.nodes.values()), default=0) - 1

    def depth(self) -> int:
        best = 0
        stack = [(self.root, 0)]
        while stack:
            x, k = stack.pop()
            best = max(best, k)
            for c in self.children.get(x, ()):
                stack.append((c, k + 1))
        return best

    def max_children(self) -> int:
        return max((len(c) for c in self.children.values()), default=0)

    def adjacency(self) -> dict[NodeId, set[NodeId]]:
        adj: dict[NodeId, set[NodeId]] = {x: set() for x in self.nodes}
        for x, r in self.nodes.items():
            if r.parent is not None:
                adj[x].add(r.parent)
                adj[r.parent].add(x)
        return adj

    def postorder(self, start: NodeId | None = None) -> list[NodeId]:
        start = self.root if start is None else start
        out = []
        stack = [(start, False)]
        while stack:
            x, done = stack.pop()
            if done:
                out.append(x)
            else:
                stack.append((x, True))
                for c in self.children.get(x, ()):
                    stack.append((c, False))
        return out

    def _sorted_children(self, x: NodeId) -> list[NodeId]:
        return sorted(self.children.get(x, ()), key=repr)

    def serialize(self) -> str:
        """One line per node in DFS order: ``id parentId bag=(..) edges=(..)``.

        Ids are replaced by DFS numbers; siblings are visited in order of
        their original id.
        """
        num: dict[NodeId, int] = {}
        lines = []
        stack = [self.root]
        while stack:
            x = stack.pop()
            num[x] = len(num)
            r = self.nodes[x]
            par = "-" if r.parent is None else str(num[r.parent])
            bag = ",".join(map(str, sorted(r.bag)))
            eds = ",".join(f"({u},{v})" for u, v in sorted(r.edges))
            lines.append(f"{num[x]} {par} bag=({bag}) edges=({eds})")
            stack.extend(reversed(self._sorted_children(x)))
        return "\n".join(lines)

    def canonical(self) -> str:
        """Id-free canonical form: subtrees are sorted by their own encoding."""
        enc: dict[NodeId, str] = {}
        for x in self.postorder():
            r = self.nodes[x]
            kids = sorted(enc.pop(c) for c in self.children.get(x, ()))
            enc[x] = (f"[{sorted(r.bag)}|{sorted(r.edges)}|" + "".join(kids) + "]")
        return enc[self.root]


@dataclass
class PrefixRebuildDescription:
    """Replace the old prefix ``p`` by ``new_nodes`` and reattach via ``pi``."""

    p: frozenset[NodeId]
    new_nodes: dict[NodeId, NodeRec]
    pi: dict[NodeId, NodeId]
    root: NodeId

    @property
    def size(self) -> int:
        return len(self.p) + len(self.new_nodes)


def apply_description(td: AnnotatedTreeDecomposition, u: PrefixRebuildDescription) -> None:
    """Apply a prefix-rebuilding update in place."""
    missing = [x for x in u.p if x not in td.nodes]
    if missing:
        raise ValueError(f"prefix nodes {missing[:3]} are not in the decomposition")
    for x, tgt in u.pi.items():
        if tgt not in u.new_nodes:
            raise ValueError(f"attachment target {tgt!r} is not in the new prefix")
        if x not in td.nodes or x in u.p:
            raise ValueError(f"attached node {x!r} is not outside the old prefix")
        if td.nodes[x].parent not in u.p:
            raise ValueError(f"attached node {x!r} does not hang from the old prefix")
    for x in u.p:
        del td.nodes[x]
        td.children.pop(x, None)
    for x, rec in u.new_nodes.items():
        if x in td.nodes:
            raise ValueError(f"new prefix node {x!r} clashes with a kept node")
        td.nodes[x] = rec
        td.children[x] = []
    for x, tgt in u.pi.items():
        r = td.nodes[x]
        td.nodes[x] = NodeRec(tgt, r.bag, r.edges)
    for x, rec in u.new_nodes.items():
        if rec.parent is not None:
            td.children[rec.parent].append(x)
    for x, tgt in u.pi.items():
        td.children[tgt].append(x)
    td.root = u.root


# --- gluing torso decompositions -------------------------------------------------


@dataclass
class _TorsoPiece:
    bags: dict[int, frozenset[int]]
    parent: dict[int, int | None]
    q: dict[int, int]
    el: frozenset[tuple[int, int]]
    owned: dict[int, frozenset[tuple[int, int]]]


class GlueState:
    """Per-node caches (T_t, q_t, EL(t)) for exporting an engine's decomposition."""

    def __init__(self, engine) -> None:
        self.engine = engine
        self.pieces: dict[int, _TorsoPiece] = {}
        self.recomputed = 0
        d = engine.d
        for t in d.postorder():
            if t != d.root and not d.is_leaf(t):
                self._compute(t)
        self.td = self._assemble()

    # -- per node --

    def _compute(self, t: int) -> None:
        d = self.engine.d
        h = d.torso(t)
        tdec, q = torso_tree_decomposition(h, PARENT)
        top = q[PARENT]
        parent: dict[int, int | None] = {top: None}
        order = [top]
        for x in order:
            for y in sorted(tdec.adj[x]):
                if y not in parent:
                    parent[y] = x
                    order.append(y)
        verts = h.vertices
        el: set[tuple[int, int]] = set()
        for c in d.children[t]:
            if d.is_leaf(c):
                vs = d.edges[d.leaf_edge[c]]
                if len(vs) == 2 and vs <= verts:
                    el.add(edge_key(*vs))
            else:
                for u, v in self.pieces[c].el:
                    if u in verts and v in verts:
                        el.add((u, v))
        adh_t = d.adh[t]
        depth = {top: 0}
        for x in order[1:]:
            depth[x] = depth[parent[x]] + 1
        owned: dict[int, set[tuple[int, int]]] = {}
        for u, v in el:
            if u in adh_t and v in adh_t:
                continue
            best = min((x for x in order if u in tdec.bags[x] and v in tdec.bags[x]),
                       key=lambda x: depth[x])
            owned.setdefault(best, set()).add((u, v))
        self.pieces[t] = _TorsoPiece(dict(tdec.bags), parent, dict(q), frozenset(el),
                                     {x: frozenset(s) for x, s in owned.items()})
        self.recomputed += 1

    def _records_for(self, t: int, out: dict[NodeId, NodeRec]) -> None:
        """Export records of T_t, the edge node above t and the nodes below it."""
        d = self.engine.d
        piece = self.pieces[t]
        par = d.parent[t]
        e_up = ("E", t)
        out[e_up] = NodeRec(("T", par, piece_q(self, par, t)) if par != d.root else ("L", d.root),
                            d.adh[t], frozenset())
        for x, p in piece.parent.items():
            out[("T", t, x)] = NodeRec(e_up if p is None else ("T", t, p), piece.bags[x],
                                       piece.owned.get(x, frozenset()))
        for c in d.children[t]:
            out[("E", c)] = NodeRec(("T", t, piece.q[c]), d.adh[c], frozenset())
            if d.is_leaf(c):
                out[("L", c)] = NodeRec(("E", c), d.edges[d.leaf_edge[c]], frozenset())

    def _root_records(self, out: dict[NodeId, NodeRec]) -> None:
        d = self.engine.d
        out[("L", d.root)] = NodeRec(None, d.edges[d.leaf_edge[d.root]], frozenset())
        r = d.root_child()
        if r is not None and d.is_leaf(r):
            out[("E", r)] = NodeRec(("L", d.root), d.adh[r], frozenset())
            out[("L", r)] = NodeRec(("E", r), d.edges[d.leaf_edge[r]], frozenset())

    def _assemble(self) -> AnnotatedTreeDecomposition:
        d = self.engine.d
        recs: dict[NodeId, NodeRec] = {}
        self._root_records(recs)
        for t in self.pieces:
            self._records_for(t, recs)
        return _from_records(recs, ("L", d.root))

    # -- updates --

    def update(self, seq: RotationSequence) -> PrefixRebuildDescription:
        """Refresh caches after ``seq`` and describe the export change."""
        d = self.engine.d
        for t in list(self.pieces):
            if t not in d.parent:
                del self.pieces[t]
        trace = seq.trace_new
        order = [t for t in d.postorder() if t in trace] if len(trace) * 4 > len(d.parent) \
            else sorted(trace, key=d.depth, reverse=True)
        for t in order:
            if t != d.root and not d.is_leaf(t):
                self._compute(t)
        new_recs: dict[NodeId, NodeRec] = {}
        self._root_records(new_recs)
        for t in trace:
            if t != d.root and not d.is_leaf(t):
                self._records_for(t, new_recs)
        old = self.td
        p: set[NodeId] = set()
        pi: dict[NodeId, NodeId] = {}
        stack = [old.root]
        while stack:
            x = stack.pop()
            if x not in new_recs and self._kept(x, trace):
                # x is outside both prefixes; its parent was in P
                pi[x] = self._new_parent(x)
                continue
            p.add(x)
            stack.extend(old.children.get(x, ()))
        desc = PrefixRebuildDescription(frozenset(p), new_recs, pi, ("L", d.root))
        apply_description(self.td, desc)
        return desc

    def _kept(self, x: NodeId, trace: frozenset[int]) -> bool:
        d = self.engine.d
        owner = x[1]
        if owner not in d.parent or owner in trace:
            return False
        if x[0] == "T":
            return True
        return d.parent[owner] not in trace

    def _new_parent(self, x: NodeId) -> NodeId:
        d = self.engine.d
        owner = x[1]
        if x[0] == "T":
            return ("E", owner)
        if x[0] == "L":
            return ("E", owner)
        par = d.parent[owner]
        return ("T", par, self.pieces[par].q[owner]) if par != d.root else ("L", d.root)


def piece_q(gs: GlueState, t: int, key: int) -> int:
    return gs.pieces[t].q[key]


def _from_records(recs: dict[NodeId, NodeRec], root: NodeId) -> AnnotatedTreeDecomposition:
    td = AnnotatedTreeDecomposition(dict(recs), {x: [] for x in recs}, root)
    for x, r in recs.items():
        if r.parent is not None:
            td.children[r.parent].append(x)
    return td


def build_full(engine) -> AnnotatedTreeDecomposition:
    """Export from scratch."""
    return GlueState(engine).td


def apply_engine_update(gs: GlueState, seq: RotationSequence) -> PrefixRebuildDescription:
    return gs.update(seq)


def validate_export(g: Graph, td: AnnotatedTreeDecomposition):
    from .oracle import validate_tree_decomposition
    return validate_tree_decomposition(g, {x: r.bag for x, r in td.nodes.items()}, td.adjacency(),
                                       {x: r.edges for x, r in td.nodes.items()}, td.root)


def graph_from_export(td: AnnotatedTreeDecomposition, vertices: Iterable[int]) -> Graph:
    g = Graph(vertices)
    for r in td.nodes.values():
        for u, v in r.edges:
            g.add_edge(u, v)
    return g
