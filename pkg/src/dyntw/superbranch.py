"""Rooted superbranch decompositions and the basic rotations on them.

The tree is rooted at the leaf of the empty hyperedge e_⊥.  Each non-root
node stores the adhesion towards its parent, which is all that is needed to
produce torsos: the torso of an internal node has one hyperedge per child
(keyed by the child id) and one for the parent (keyed by ``PARENT``).

Node ids are never reused.  Split and contract always produce fresh ids, so
"was this node here before the sequence started" is just an id comparison.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field

from .hypergraph import Hypergraph

PARENT = -1


class RotationError(ValueError):
    """A basic rotation was requested with violated preconditions."""


def hsize(h: Hypergraph) -> int:
    return h.size()


# --- rotation sequences ------------------------------------------------------


@dataclass(frozen=True)
class Rotation:
    kind: str  # split | contract | insert | delete | touch
    args: tuple
    size: int


@dataclass
class RotationSequence:
    """Rotations applied to a decomposition, with their bookkeeping.

    ``v_old``/``v_new`` are the involved nodes of the tree before and after,
    ``trace_old``/``trace_new`` their ancestor closures.
    """

    rotations: list[Rotation] = field(default_factory=list)
    size: int = 0
    v_old: frozenset[int] = frozenset()
    v_new: frozenset[int] = frozenset()
    trace_old: frozenset[int] = frozenset()
    trace_new: frozenset[int] = frozenset()
    watermark: int = 0

    @property
    def size_t(self) -> int:
        """‖S‖_T: size plus the number of old-tree ancestors traversed."""
        return self.size + len(self.trace_old)

    def count(self, kind: str) -> int:
        return sum(1 for r in self.rotations if r.kind == kind)


class _Recorder:
    def __init__(self, d: "SuperbranchDecomposition"):
        self.watermark = d.next_node
        self.rotations: list[Rotation] = []
        self.size = 0
        self.involved: set[int] = set()
        self.trace_old: set[int] = set()

    def note(self, d: "SuperbranchDecomposition", rot: Rotation, inputs: Iterable[int],
             outputs: Iterable[int]) -> None:
        self.rotations.append(rot)
        self.size += rot.size
        self.involved.update(inputs)
        self.involved.update(outputs)

    def climb(self, d: "SuperbranchDecomposition", inputs: Iterable[int]) -> None:
        for x in inputs:
            if x < self.watermark:
                self._climb(d, x)

    def _climb(self, d: "SuperbranchDecomposition", x: int) -> None:
        # Uninvolved old nodes keep their ancestor relations under every
        # rotation, so walking the current tree finds the old ancestors.
        v: int | None = x
        while v is not None:
            if v < self.watermark:
                if v in self.trace_old:
                    return
                self.trace_old.add(v)
            v = d.parent[v]

    def finish(self, d: "SuperbranchDecomposition") -> RotationSequence:
        v_old = frozenset(x for x in self.involved if x < self.watermark)
        v_new = frozenset(x for x in self.involved if x in d.parent)
        trace_new: set[int] = set()
        for x in v_new:
            v: int | None = x
            while v is not None and v not in trace_new:
                trace_new.add(v)
                v = d.parent[v]
        return RotationSequence(list(self.rotations), self.size, v_old, v_new,
                                frozenset(self.trace_old), frozenset(trace_new), self.watermark)


# --- the decomposition --------------------------------------------------------


class SuperbranchDecomposition:
    """Mutable e_⊥-rooted superbranch decomposition of a hypergraph."""

    def __init__(self) -> None:
        self.edges: dict[int, frozenset[int]] = {}
        self.occ: dict[int, int] = {}
        self.parent: dict[int, int | None] = {}
        self.children: dict[int, list[int]] = {}
        self.leaf_edge: dict[int, int] = {}
        self.edge_leaf: dict[int, int] = {}
        self.nleaves: dict[int, int] = {}
        self.adh: dict[int, frozenset[int]] = {}
        self.root: int = -1
        self.next_node = 0
        self.next_edge = 0
        self.phi_total = 0.0
        self._recorders: list[_Recorder] = []

    # -- construction --

    @classmethod
    def build(cls, edges: dict[int, Iterable[int]], parent: dict[int, int | None],
              leaf_edge: dict[int, int]) -> "SuperbranchDecomposition":
        """Build from an explicit tree; adhesions and counters are computed."""
        d = cls()
        d.edges = {e: frozenset(vs) for e, vs in edges.items()}
        for vs in d.edges.values():
            for v in vs:
                d.occ[v] = d.occ.get(v, 0) + 1
        roots = [x for x, p in parent.items() if p is None]
        if len(roots) != 1 or roots[0] not in leaf_edge:
            raise ValueError("need exactly one root and it must be a leaf")
        d.root = roots[0]
        d.parent = dict(parent)
        for x in sorted(parent):
            if x not in leaf_edge:
                d.children[x] = []
        for x in sorted(parent):
            p = parent[x]
            if p is not None:
                if p in leaf_edge:
                    if p != d.root:
                        raise ValueError("non-root leaf with a child")
                    d.children.setdefault(p, []).append(x)
                else:
                    d.children[p].append(x)
        d.leaf_edge = dict(leaf_edge)
        d.edge_leaf = {e: x for x, e in leaf_edge.items()}
        if set(d.edge_leaf) != set(d.edges):
            raise ValueError("leaf labelling is not a bijection onto the hyperedges")
        d.next_node = max(parent) + 1
        d.next_edge = max(d.edges, default=-1) + 1
        d._recompute_all()
        return d

    def _recompute_all(self) -> None:
        """From-scratch adhesions, leaf counts and potential."""
        self.adh = {}
        self.nleaves = {}
        # per node, counts of hyperedges below it containing each vertex;
        # vertices whose every occurrence is below are dropped as we go up
        cnt: dict[int, dict[int, int]] = {}
        for x in self.postorder():
            if x in self.leaf_edge:
                here = {v: 1 for v in self.edges[self.leaf_edge[x]]}
                n = 1
            else:
                here = {}
                n = 0
            for c in self.children.get(x, ()):
                n += self.nleaves[c]
                sub = cnt.pop(c)
                if len(sub) > len(here):
                    here, sub = sub, here
                for v, k in sub.items():
                    here[v] = here.get(v, 0) + k
            here = {v: k for v, k in here.items() if k < self.occ[v]}
            cnt[x] = here
            self.nleaves[x] = n
            if x != self.root:
                self.adh[x] = frozenset(here)
        self.phi_total = sum(self.phi_node(t) for t in self.internal_nodes())

    def copy(self) -> "SuperbranchDecomposition":
        d = SuperbranchDecomposition()
        d.edges = dict(self.edges)
        d.occ = dict(self.occ)
        d.parent = dict(self.parent)
        d.children = {x: list(c) for x, c in self.children.items()}
        d.leaf_edge = dict(self.leaf_edge)
        d.edge_leaf = dict(self.edge_leaf)
        d.nleaves = dict(self.nleaves)
        d.adh = dict(self.adh)
        d.root = self.root
        d.next_node = self.next_node
        d.next_edge = self.next_edge
        d.phi_total = self.phi_total
        return d

    # -- navigation --

    def is_leaf(self, x: int) -> bool:
        return x in self.leaf_edge

    def nodes(self) -> list[int]:
        return list(self.parent)

    def internal_nodes(self) -> list[int]:
        return [x for x in self.parent if x not in self.leaf_edge]

    def degree(self, t: int) -> int:
        """Δ(t), the number of children."""
        return len(self.children.get(t, ()))

    def max_degree(self) -> int:
        return max((self.degree(t) for t in self.internal_nodes()), default=0)

    def depth(self, x: int) -> int:
        k = 0
        p = self.parent[x]
        while p is not None:
            k += 1
            p = self.parent[p]
        return k

    def ancestors(self, x: int) -> list[int]:
        """x and all its ancestors, bottom-up."""
        out = []
        v: int | None = x
        while v is not None:
            out.append(v)
            v = self.parent[v]
        return out

    def root_child(self) -> int | None:
        ch = self.children.get(self.root, [])
        return ch[0] if ch else None

    def postorder(self, start: int | None = None) -> list[int]:
        start = self.root if start is None else start
        out: list[int] = []
        stack = [(start, False)]
        while stack:
            x, done = stack.pop()
            if done:
                out.append(x)
                continue
            stack.append((x, True))
            for c in reversed(self.children.get(x, ())):
                stack.append((c, False))
        return out

    def preorder(self, start: int | None = None) -> list[int]:
        start = self.root if start is None else start
        out: list[int] = []
        stack = [start]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(reversed(self.children.get(x, ())))
        return out

    def height(self) -> int:
        """depth(T): the maximum node depth."""
        best = 0
        stack = [(self.root, 0)]
        while stack:
            x, k = stack.pop()
            best = max(best, k)
            for c in self.children.get(x, ()):
                stack.append((c, k + 1))
        return best

    def leaf_set(self, x: int) -> list[int]:
        """L[x] as hyperedge ids."""
        return [self.leaf_edge[y] for y in self.preorder(x) if y in self.leaf_edge]

    # -- adhesions, torsos, potential --

    def leaf_adh(self, x: int) -> frozenset[int]:
        return frozenset(v for v in self.edges[self.leaf_edge[x]] if self.occ[v] >= 2)

    def torso(self, t: int) -> Hypergraph:
        if self.is_leaf(t):
            raise RotationError(f"node {t} is a leaf")
        h = Hypergraph()
        for c in self.children[t]:
            h.edges[c] = self.adh[c]
        h.edges[PARENT] = self.adh.get(t, frozenset())
        return h

    def torso_size(self, t: int) -> int:
        return self.torso(t).size()

    def phi_node(self, t: int) -> float:
        if self.is_leaf(t):
            raise RotationError(f"potential is defined on internal nodes, {t} is a leaf")
        return (self.degree(t) - 1) * math.log2(self.nleaves[t])

    def phi(self) -> float:
        return self.phi_total

    def phi_recompute(self) -> float:
        return sum(self.phi_node(t) for t in self.internal_nodes())

    # -- recording --

    @contextmanager
    def recording(self) -> Iterator[list]:
        """Record every rotation applied inside the block.

        Yields a one-element list that holds the finished sequence on exit.
        """
        rec = _Recorder(self)
        self._recorders.append(rec)
        box: list = [None]
        try:
            yield box
        finally:
            self._recorders.remove(rec)
            box[0] = rec.finish(self)

    def _pre(self, inputs: Iterable[int]) -> None:
        """Collect old-tree ancestors of the inputs before the tree changes."""
        inputs = list(inputs)
        for rec in self._recorders:
            rec.climb(self, inputs)

    def _note(self, rot: Rotation, inputs: Iterable[int], outputs: Iterable[int]) -> None:
        inputs, outputs = list(inputs), list(outputs)
        for rec in self._recorders:
            rec.note(self, rot, inputs, outputs)

    def _fresh_node(self) -> int:
        x = self.next_node
        self.next_node += 1
        return x

    def _replace_child(self, p: int, old: int, new: list[int]) -> None:
        ch = self.children[p]
        i = ch.index(old)
        ch[i:i + 1] = new

    # -- basic rotations --

    def touch(self, t: int) -> None:
        if t not in self.parent:
            raise RotationError(f"unknown node {t}")
        self._pre([t])
        self._note(Rotation("touch", (t,), 0), [t], [t])

    def split(self, t: int, c: Iterable[int]) -> tuple[int, int]:
        """Split t with (C, C̄); returns (t_C, t_C̄) where t_C̄ holds the parent side."""
        if t not in self.parent or self.is_leaf(t):
            raise RotationError(f"split needs an internal node, got {t}")
        h = self.torso(t)
        c = frozenset(c)
        if not c <= h.edges.keys():
            raise RotationError("split side is not a set of torso hyperedges")
        cbar = frozenset(h.edges) - c
        if len(c) < 2 or len(cbar) < 2:
            raise RotationError("both sides of a split need at least two hyperedges")
        if PARENT in c:
            c, cbar = cbar, c
        size = h.size()
        bd = h.boundary(c)
        self._pre([t])
        self.phi_total -= self.phi_node(t)
        low, up = self._fresh_node(), self._fresh_node()
        p = self.parent.pop(t)
        old_children = self.children.pop(t)
        low_children = [x for x in old_children if x in c]
        up_children = []
        placed = False
        for x in old_children:
            if x in c:
                if not placed:
                    up_children.append(low)
                    placed = True
            else:
                up_children.append(x)
        self.children[low] = low_children
        self.children[up] = up_children
        for x in low_children:
            self.parent[x] = low
        for x in up_children:
            self.parent[x] = up
        self.parent[up] = p
        self._replace_child(p, t, [up])
        self.nleaves[low] = sum(self.nleaves[x] for x in low_children)
        self.nleaves[up] = self.nleaves.pop(t)
        self.adh[low] = bd
        self.adh[up] = self.adh.pop(t)
        self.phi_total += self.phi_node(low) + self.phi_node(up)
        self._note(Rotation("split", (t, c), size), [t], [low, up])
        return low, up

    def contract(self, s: int, t: int) -> int:
        """Contract the tree edge between internal nodes s and t (either order)."""
        if self.parent.get(t) == s:
            s, t = t, s
        if self.parent.get(s) != t:
            raise RotationError(f"{s} and {t} are not adjacent")
        if self.is_leaf(s) or self.is_leaf(t):
            raise RotationError("contract needs two internal nodes")
        size = self.torso_size(s) + self.torso_size(t)
        self._pre([s, t])
        self.phi_total -= self.phi_node(s) + self.phi_node(t)
        m = self._fresh_node()
        p = self.parent.pop(t)
        del self.parent[s]
        s_children = self.children.pop(s)
        t_children = self.children.pop(t)
        merged: list[int] = []
        for x in t_children:
            merged.extend(s_children if x == s else [x])
        self.children[m] = merged
        for x in merged:
            self.parent[x] = m
        self.parent[m] = p
        self._replace_child(p, t, [m])
        self.nleaves[m] = self.nleaves.pop(t)
        del self.nleaves[s]
        self.adh[m] = self.adh.pop(t)
        del self.adh[s]
        self.phi_total += self.phi_node(m)
        self._note(Rotation("contract", (s, t), size), [s, t], [m])
        return m

    def _child_leaf_vertices(self, t: int, skip: int | None = None) -> set[int]:
        out: set[int] = set()
        for x in self.children[t]:
            if x != skip and x in self.leaf_edge:
                out |= self.edges[self.leaf_edge[x]]
        return out

    def _refresh_leaf_children(self, t: int) -> None:
        for x in self.children[t]:
            if x in self.leaf_edge:
                self.adh[x] = self.leaf_adh(x)

    def _bump_ancestors(self, t: int, delta: int) -> None:
        v: int | None = t
        while v is not None:
            if v != self.root:
                self.phi_total -= self.phi_node(v)
            self.nleaves[v] += delta
            if v != self.root:
                self.phi_total += self.phi_node(v)
            v = self.parent[v]

    def insert_leaf(self, t: int, x: Iterable[int], eid: int | None = None) -> tuple[int, int]:
        """Insert a hyperedge on X as a new leaf child of t; returns (leaf, eid)."""
        if t not in self.parent or self.is_leaf(t):
            raise RotationError(f"insert needs an internal node, got {t}")
        x = frozenset(x)
        if not x <= self._child_leaf_vertices(t):
            raise RotationError("inserted vertices must occur in leaf children of t")
        if eid is None:
            eid = self.next_edge
        if eid in self.edges:
            raise RotationError(f"hyperedge id {eid} already in use")
        self.next_edge = max(self.next_edge, eid + 1)
        size = len(x) * self.torso_size(t) + self.depth(t) + 1
        self._pre([t])
        leaf = self._fresh_node()
        self.edges[eid] = x
        for v in x:
            self.occ[v] += 1
        self.leaf_edge[leaf] = eid
        self.edge_leaf[eid] = leaf
        self.parent[leaf] = t
        self.nleaves[leaf] = 1
        self.phi_total -= self.phi_node(t)
        self.children[t].append(leaf)
        self.phi_total += self.phi_node(t)
        self._refresh_leaf_children(t)
        self._bump_ancestors(t, 1)
        self._note(Rotation("insert", (t, x, eid), size), [t], [t])
        return leaf, eid

    def delete_leaf(self, leaf: int) -> int:
        """Delete a leaf and its hyperedge; returns the removed hyperedge id."""
        if leaf not in self.leaf_edge or leaf == self.root:
            raise RotationError(f"{leaf} is not a deletable leaf")
        t = self.parent[leaf]
        if self.degree(t) < 3:
            raise RotationError("the parent of a deleted leaf needs three children")
        eid = self.leaf_edge[leaf]
        vs = self.edges[eid]
        if not vs <= self._child_leaf_vertices(t, skip=leaf):
            raise RotationError("deleted hyperedge must be covered by sibling leaves")
        size = len(vs) * self.torso_size(t) + self.depth(t) + 1
        self._pre([leaf, t])
        self._note(Rotation("delete", (leaf,), size), [leaf, t], [t])
        self.phi_total -= self.phi_node(t)
        self.children[t].remove(leaf)
        self.phi_total += self.phi_node(t)
        del self.parent[leaf], self.leaf_edge[leaf], self.edge_leaf[eid]
        del self.nleaves[leaf], self.adh[leaf], self.edges[eid]
        for v in vs:
            self.occ[v] -= 1
            if self.occ[v] == 0:
                del self.occ[v]
        self._refresh_leaf_children(t)
        self._bump_ancestors(t, -1)
        return eid

    def apply(self, rot: Rotation) -> None:
        """Replay one recorded rotation."""
        if rot.kind == "split":
            self.split(*rot.args)
        elif rot.kind == "contract":
            self.contract(*rot.args)
        elif rot.kind == "insert":
            self.insert_leaf(*rot.args)
        elif rot.kind == "delete":
            self.delete_leaf(*rot.args)
        elif rot.kind == "touch":
            self.touch(*rot.args)
        else:
            raise RotationError(f"unknown rotation {rot.kind}")

    def apply_sequence(self, seq: RotationSequence) -> None:
        for rot in seq.rotations:
            self.apply(rot)

    # -- auditing and dumping --

    def audit(self, phi_tol: float = 1e-6) -> list[str]:
        """Recompute everything from the hypergraph and tree; list mismatches."""
        problems: list[str] = []
        if self.root not in self.leaf_edge or self.parent.get(self.root, 0) is not None:
            problems.append("root is not a parentless leaf")
        occ: dict[int, int] = {}
        for vs in self.edges.values():
            for v in vs:
                occ[v] = occ.get(v, 0) + 1
        if occ != self.occ:
            problems.append("occurrence counts are stale")
        if set(self.edge_leaf) != set(self.edges) or \
                {self.edge_leaf[e]: e for e in self.edge_leaf} != self.leaf_edge:
            problems.append("leaf labelling is not a bijection")
        for x, p in self.parent.items():
            if p is not None and x not in self.children.get(p, ()):
                problems.append(f"node {x} missing from its parent's child list")
        for p, ch in self.children.items():
            for x in ch:
                if self.parent.get(x) != p:
                    problems.append(f"child {x} of {p} has a different parent link")
            if p != self.root and p not in self.leaf_edge and len(ch) < 2:
                problems.append(f"internal node {p} has fewer than two children")
        if len(self.children.get(self.root, ())) > 1:
            problems.append("root leaf has more than one child")
        reach = self.preorder()
        if set(reach) != set(self.parent):
            problems.append("tree is not connected from the root")
            return problems
        g = Hypergraph(self.edges)
        for x in self.postorder():
            leaves = self.leaf_set(x)
            if x != self.root:
                if self.nleaves.get(x) != len(leaves):
                    problems.append(f"leaf count of {x} is {self.nleaves.get(x)}, expected {len(leaves)}")
                bd = g.boundary(leaves)
                if self.adh.get(x) != bd:
                    problems.append(f"adhesion of {x} is stale")
        if self.nleaves.get(self.root) != len(self.edges):
            problems.append("root leaf count is stale")
        phi = self.phi_recompute() if not problems else 0.0
        if not problems and abs(phi - self.phi_total) > phi_tol * max(1.0, abs(phi)):
            problems.append(f"cached potential {self.phi_total} differs from {phi}")
        return problems

    def dump(self) -> str:
        """One line per node: id depth kind parent |L[t]| adhesion."""
        lines = []
        stack = [(self.root, 0)]
        while stack:
            x, k = stack.pop()
            kind = f"leaf:{self.leaf_edge[x]}" if x in self.leaf_edge else "node"
            p = self.parent[x]
            adh = ",".join(map(str, sorted(self.adh.get(x, ()))))
            lines.append(f"{x} {k} {kind} {'-' if p is None else p} {self.nleaves[x]} ({adh})")
            for c in reversed(self.children.get(x, ())):
                stack.append((c, k + 1))
        return "\n".join(lines)
