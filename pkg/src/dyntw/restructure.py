"""Splitting high-degree nodes without losing downwards well-linkedness."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .superbranch import PARENT, RotationError, SuperbranchDecomposition
from .welllinked import partition_into_well_linked


@dataclass(frozen=True)
class SplitBudget:
    """Degree thresholds of the single split and of the full split loop."""

    k_wl: int
    alpha: int
    n_pinned: int

    def __post_init__(self) -> None:
        if self.k_wl < 1:
            raise ValueError("k_wl must be at least 1")

    @property
    def single(self) -> int:
        return self.n_pinned + 2 ** (self.k_wl + self.alpha)

    @property
    def loop(self) -> int:
        return max(self.single, 1 + 2 ** (2 * self.k_wl))


def split_once(d: SuperbranchDecomposition, t: int, x: Iterable[int]) -> tuple[int, int] | None:
    """One well-linked split of t keeping the children ``x`` on the upper side.

    Returns (lower, upper) when a split happened, or None when every
    well-linked part of the other children is a singleton, which certifies
    Δ(t) ≤ |X| + 2^(wl + α).
    """
    if t == d.root or t not in d.parent or d.is_leaf(t):
        raise RotationError(f"split_once needs an internal node, got {t}")
    x = frozenset(x)
    if not x:
        raise RotationError("split_once needs at least one pinned child")
    if not x <= set(d.children[t]):
        raise RotationError("pinned nodes must be children of t")
    h = d.torso(t)
    e_y = [c for c in d.children[t] if c not in x]
    for part in partition_into_well_linked(h, e_y):
        if len(part) >= 2:
            return d.split(t, part)
    return None


def split_to_degree(d: SuperbranchDecomposition, t: int, x: Iterable[int] = ()) -> int:
    """Split t repeatedly until every node created has small degree.

    Returns the shallowest node of the result, which is the parent of all of
    ``x``.  Call inside ``d.recording()`` to collect the sequence.
    """
    x = frozenset(x)
    if t == d.root or t not in d.parent or d.is_leaf(t):
        raise RotationError(f"split_to_degree needs an internal node, got {t}")
    if not x <= set(d.children[t]):
        raise RotationError("pinned nodes must be children of t")
    d.touch(t)
    top = t
    active = [t]
    while active:
        v = active.pop()
        if x and v == top:
            res = split_once(d, v, x)
        else:
            pick = min(d.children[v], key=lambda c: (len(d.adh[c]), c))
            res = split_once(d, v, [pick])
        if res is None:
            continue
        low, up = res
        if v == top:
            top = up
        active.append(low)
        active.append(up)
    return top


def pinned_alpha(d: SuperbranchDecomposition, t: int, x: Iterable[int]) -> int:
    """|∪_{c ∈ X} adh(c)| for children X of t."""
    out: set[int] = set()
    for c in x:
        out |= d.adh[c]
    return len(out)


__all__ = ["SplitBudget", "split_once", "split_to_degree", "pinned_alpha", "PARENT"]
