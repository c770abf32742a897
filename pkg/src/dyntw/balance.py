"""Potential, unbalance detection and the balancing loop."""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass, field

from . import constants
from .restructure import split_to_degree
from .superbranch import RotationError, SuperbranchDecomposition


@dataclass(frozen=True)
class EngineParams:
    """Well-linkedness bound plus the degree cap and balance distance.

    Defaults are 2^(2k)+1 and 2^(2k+1).  Overrides must keep
    balance_dist ≥ max(5, 2·(degree_cap − 1)); they are flagged as
    non-conforming.
    """

    k_wl: int
    degree_cap: int = 0
    balance_dist: int = 0
    conforming: bool = field(default=True, init=False)

    def __post_init__(self) -> None:
        if self.k_wl < 1:
            raise ValueError("k_wl must be at least 1")
        dc = self.degree_cap or constants.default_degree_cap(self.k_wl)
        bd = self.balance_dist or constants.default_balance_dist(self.k_wl)
        if dc < 3:
            raise ValueError("degree cap must be at least 3")
        if bd < constants.min_balance_dist(dc):
            raise ValueError(
                f"balance distance {bd} is below max(5, 2·(degree_cap−1)) = {constants.min_balance_dist(dc)}")
        object.__setattr__(self, "degree_cap", dc)
        object.__setattr__(self, "balance_dist", bd)
        conforming = (dc == constants.default_degree_cap(self.k_wl)
                      and bd == constants.default_balance_dist(self.k_wl))
        object.__setattr__(self, "conforming", conforming)


def phi(d: SuperbranchDecomposition, t: int) -> float:
    return d.phi_node(t)


def find_unbalanced_witness(d: SuperbranchDecomposition, t: int, dist: int) -> int | None:
    """Descendant s at depth +dist with 3|L[s]| ≥ 2|L[t]|, or None if balanced.

    Greedy descent through the child with most leaves finds such an s
    whenever one exists, since every node on the way to s holds more than
    half of the leaves of its parent.
    """
    target = d.nleaves[t]
    s = t
    for _ in range(dist):
        ch = d.children.get(s)
        if not ch:
            return None
        s = max(ch, key=lambda c: (d.nleaves[c], -c))
        if 3 * d.nleaves[s] < 2 * target:
            return None
    return s


def is_unbalanced_brute(d: SuperbranchDecomposition, t: int, dist: int) -> bool:
    """Check every descendant; used to validate the greedy descent."""
    stack = [(t, 0)]
    while stack:
        x, k = stack.pop()
        if k >= dist and 3 * d.nleaves[x] >= 2 * d.nleaves[t]:
            return True
        for c in d.children.get(x, ()):
            stack.append((c, k + 1))
    return False


@dataclass
class BalanceEvent:
    node: int
    phi_before: float
    phi_after: float


def balance_step(d: SuperbranchDecomposition, t: int, dist: int) -> int:
    """Contract the path from t down to the witness's parent, then re-split.

    Returns the shallowest node of the new subtree.
    """
    if t == d.root:
        raise RotationError("the root is never balanced")
    s = find_unbalanced_witness(d, t, dist)
    if s is None:
        raise RotationError(f"node {t} is {dist}-balanced")
    path = []
    v = d.parent[s]
    while v != t:
        path.append(v)
        v = d.parent[v]
    merged = t
    for p in reversed(path):
        merged = d.contract(p, merged)
    return split_to_degree(d, merged, [s])


def rebalance(d: SuperbranchDecomposition, r: Iterable[int], dist: int,
              events: list[BalanceEvent] | None = None) -> int:
    """Make every non-root node ``dist``-balanced, starting from prefix r.

    ``r`` must be a prefix (closed under taking parents) that contains every
    unbalanced node.  Returns the number of balancing steps.
    """
    r = set(r)
    for x in r:
        p = d.parent.get(x, 0)
        if x not in d.parent or (p is not None and p not in r):
            raise RotationError("rebalance needs a prefix of the current tree")
    stack = _prefix_preorder(d, d.root, r)
    steps = 0
    while stack:
        t = stack[-1]
        if t == d.root or d.is_leaf(t) or find_unbalanced_witness(d, t, dist) is None:
            stack.pop()
            continue
        stack.pop()
        before = d.phi_total
        with d.recording() as box:
            balance_step(d, t, dist)
        seq = box[0]
        steps += 1
        if events is not None:
            events.append(BalanceEvent(t, before, d.phi_total))
        new_nodes = set(seq.v_new)
        top = min(new_nodes, key=d.depth)
        stack.extend(_prefix_preorder(d, top, new_nodes))
    return steps


def _prefix_preorder(d: SuperbranchDecomposition, start: int, allowed: set[int]) -> list[int]:
    if start not in allowed:
        return []
    out = []
    todo = [start]
    while todo:
        x = todo.pop()
        out.append(x)
        for c in reversed(d.children.get(x, ())):
            if c in allowed:
                todo.append(c)
    return out


def log2_leaves(d: SuperbranchDecomposition, t: int) -> float:
    return math.log2(d.nleaves[t])
