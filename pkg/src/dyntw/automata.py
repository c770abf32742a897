"""Bottom-up automata over annotated tree decompositions, and their dynamic runs.

An automaton has a leaf map ``iota(bag)`` and a transition
``delta(bag_t, bag_x, bag_y, edges_t, state_x, state_y)``.  A node with a
single child passes an empty second bag and the null state ``BOT``.  The
decompositions are not nice, so each transition projects a child table onto
the shared vertices and extends it over the new ones.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from itertools import combinations, product

from .treedecomp import AnnotatedTreeDecomposition, NodeId, PrefixRebuildDescription, apply_description

BOT = None
EMPTY: frozenset[int] = frozenset()


def _subsets(bag: Iterable[int]) -> Iterator[frozenset[int]]:
    items = sorted(bag)
    for r in range(len(items) + 1):
        for c in combinations(items, r):
            yield frozenset(c)


def _children(bag_x, bag_y, state_x, state_y):
    out = []
    if state_x is not BOT:
        out.append((frozenset(bag_x), state_x))
    if state_y is not BOT:
        out.append((frozenset(bag_y), state_y))
    return out


class Automaton:
    """Interface; subclasses fill in ``iota``, ``delta`` and ``answer``."""

    name = "automaton"
    tau = "O(1)"

    def iota(self, bag: frozenset[int]):
        raise NotImplementedError

    def delta(self, bag_t, bag_x, bag_y, edges_t, state_x, state_y):
        raise NotImplementedError

    def answer(self, state, bag: frozenset[int]):
        raise NotImplementedError


class MISAutomaton(Automaton):
    """Maximum independent set size.  State: independent S ⊆ bag → best size."""

    name = "mis"
    tau = "2^(w+1)"

    def iota(self, bag):
        return {s: len(s) for s in _subsets(bag)}

    def delta(self, bag_t, bag_x, bag_y, edges_t, state_x, state_y):
        bag_t = frozenset(bag_t)
        projs = []
        for bag_c, st in _children(bag_x, bag_y, state_x, state_y):
            shared = bag_c & bag_t
            proj: dict[frozenset[int], int] = {}
            for s, val in st.items():
                key = s & shared
                v = val - len(key)
                if proj.get(key, -1) < v:
                    proj[key] = v
            projs.append((shared, proj))
        out = {}
        for s in _subsets(bag_t):
            if any(u in s and v in s for u, v in edges_t):
                continue
            total = len(s)
            for shared, proj in projs:
                v = proj.get(s & shared)
                if v is None:
                    break
                total += v
            else:
                out[s] = total
        return out

    def answer(self, state, bag):
        return max(state.values())


class QColorAutomaton(Automaton):
    """q-colorability.  State: the set of bag colorings that extend below."""

    tau = "q^(w+1)"

    def __init__(self, q: int) -> None:
        if q < 2:
            raise ValueError("q must be at least 2")
        self.q = q
        self.name = f"color{q}"

    def iota(self, bag):
        items = sorted(bag)
        return frozenset(tuple(zip(items, cols)) for cols in product(range(self.q), repeat=len(items)))

    def delta(self, bag_t, bag_x, bag_y, edges_t, state_x, state_y):
        items = sorted(bag_t)
        projs = []
        for bag_c, st in _children(bag_x, bag_y, state_x, state_y):
            shared = bag_c & frozenset(items)
            projs.append((sorted(shared), frozenset(tuple((v, c) for v, c in col if v in shared) for col in st)))
        nbrs: dict[int, list[int]] = {v: [] for v in items}
        for u, v in edges_t:
            nbrs[u].append(v)
            nbrs[v].append(u)
        out = set()
        col: dict[int, int] = {}

        def extend(i: int) -> None:
            if i == len(items):
                for shared, proj in projs:
                    if tuple((v, col[v]) for v in shared) not in proj:
                        return
                out.add(tuple((v, col[v]) for v in items))
                return
            v = items[i]
            for c in range(self.q):
                if all(col.get(w) != c for w in nbrs[v]):
                    col[v] = c
                    extend(i + 1)
                    del col[v]

        extend(0)
        return frozenset(out)

    def answer(self, state, bag):
        return bool(state)


class DomSetAutomaton(Automaton):
    """Minimum dominating set size.

    State: (in-set I, dominated-from-below D) over the bag → fewest chosen
    vertices in the subtree.  Bag vertices outside I ∪ D are undecided; a
    vertex must be in I ∪ D when it is forgotten.
    """

    name = "domset"
    tau = "3^(w+1)"

    def iota(self, bag):
        return {(s, EMPTY): len(s) for s in _subsets(bag)}

    def delta(self, bag_t, bag_x, bag_y, edges_t, state_x, state_y):
        bag_t = frozenset(bag_t)
        projs = []
        for bag_c, st in _children(bag_x, bag_y, state_x, state_y):
            shared = bag_c & bag_t
            forgotten = bag_c - bag_t
            by_in: dict[frozenset[int], dict[frozenset[int], int]] = {}
            for (i, dm), val in st.items():
                if not forgotten <= i | dm:
                    continue
                key = i & shared
                dd = dm & shared
                v = val - len(key)
                row = by_in.setdefault(key, {})
                if row.get(dd, v + 1) > v:
                    row[dd] = v
            projs.append((shared, by_in))
        out: dict[tuple[frozenset[int], frozenset[int]], int] = {}
        for s in _subsets(bag_t):
            d0 = set()
            for u, v in edges_t:
                if u in s:
                    d0.add(v)
                if v in s:
                    d0.add(u)
            partial = {frozenset(d0) - s: len(s)}
            for shared, by_in in projs:
                row = by_in.get(s & shared)
                if row is None:
                    partial = {}
                    break
                nxt: dict[frozenset[int], int] = {}
                for dm, val in partial.items():
                    for dc, vc in row.items():
                        key = dm | dc
                        if nxt.get(key, val + vc + 1) > val + vc:
                            nxt[key] = val + vc
                partial = nxt
            for dm, val in partial.items():
                if out.get((s, dm), val + 1) > val:
                    out[(s, dm)] = val
        return out

    def answer(self, state, bag):
        return min(val for (i, dm), val in state.items() if bag <= i | dm)


def mis_automaton() -> MISAutomaton:
    return MISAutomaton()


def q_color_automaton(q: int) -> QColorAutomaton:
    return QColorAutomaton(q)


def dom_set_automaton() -> DomSetAutomaton:
    return DomSetAutomaton()


REGISTRY: dict[str, Callable[[], Automaton]] = {
    "mis": mis_automaton,
    "color3": lambda: q_color_automaton(3),
    "domset": dom_set_automaton,
}


def by_name(name: str) -> Automaton:
    try:
        return REGISTRY[name]()
    except KeyError:
        raise ValueError(f"unknown automaton {name!r}; choose from {sorted(REGISTRY)}") from None


@dataclass
class AutomatonRun:
    """A run of one automaton, kept up to date under prefix-rebuilding updates."""

    automaton: Automaton
    td: AnnotatedTreeDecomposition
    states: dict[NodeId, object] = field(default_factory=dict)
    recomputed: int = 0

    def _eval(self, x: NodeId):
        a = self.automaton
        rec = self.td.nodes[x]
        kids = sorted(self.td.children.get(x, ()), key=repr)
        if not kids and not rec.edges:
            return a.iota(rec.bag)
        if len(kids) > 2:
            raise ValueError(f"node {x!r} has {len(kids)} children")
        bx = self.td.nodes[kids[0]].bag if kids else EMPTY
        sx = self.states[kids[0]] if kids else BOT
        by = self.td.nodes[kids[1]].bag if len(kids) > 1 else EMPTY
        sy = self.states[kids[1]] if len(kids) > 1 else BOT
        return a.delta(rec.bag, bx, by, rec.edges, sx, sy)

    def _evaluate(self, order: Iterable[NodeId]) -> int:
        count = 0
        for x in order:
            self.states[x] = self._eval(x)
            count += 1
        return count

    def query(self, t: NodeId):
        if t not in self.states:
            raise ValueError(f"unknown node {t!r}")
        return self.states[t]

    def root_answer(self):
        root = self.td.root
        return self.automaton.answer(self.states[root], self.td.nodes[root].bag)

    def check(self) -> bool:
        """Re-evaluate every node and compare with the stored states."""
        return all(self._eval(x) == self.states[x] for x in self.td.postorder())


def prds_init(td: AnnotatedTreeDecomposition, a: Automaton) -> AutomatonRun:
    run = AutomatonRun(a, td.copy())
    run.recomputed = run._evaluate(run.td.postorder())
    return run


def prds_update(run: AutomatonRun, u: PrefixRebuildDescription) -> int:
    """Apply ``u`` and recompute the states of the new prefix only.

    Returns the number of recomputed states, which is at most |P′|.
    """
    for x in u.p:
        run.states.pop(x, None)
    apply_description(run.td, u)
    order = []
    stack = [(run.td.root, False)]
    while stack:
        x, done = stack.pop()
        if done:
            order.append(x)
            continue
        stack.append((x, True))
        for c in run.td.children.get(x, ()):
            if c in u.new_nodes:
                stack.append((c, False))
    run.recomputed = run._evaluate(order)
    return run.recomputed


def prds_query(run: AutomatonRun, t: NodeId):
    return run.query(t)
