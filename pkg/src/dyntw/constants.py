"""Explicit formulas for the constants hidden in the asymptotic bounds.

Every empirical bound asserted by the tests goes through this table, so the
numbers are tunable in one place and never appear as bare literals.
"""

from __future__ import annotations

import math


def internal_k(k: int) -> int:
    """Well-linkedness bound used internally for a treewidth promise k."""
    return max(3 * k + 3, 3)


def default_degree_cap(k_wl: int) -> int:
    return 2 ** (2 * k_wl) + 1


def default_balance_dist(k_wl: int) -> int:
    return 2 ** (2 * k_wl + 1)


def min_balance_dist(degree_cap: int) -> int:
    """Smallest balance distance for which one balancing step loses potential 1.

    Needs C ≥ balance_dist with C/2 ≥ degree_cap - 1 and
    C·(log2(3)/2 - log2(3/2)) ≥ 1, i.e. C ≥ 5.
    """
    return max(5, 2 * (degree_cap - 1))


def depth_bound(balance_dist: int, n_hyperedges: int) -> float:
    """1 + (balance_dist + 1) · 2 · log2 |E| for a balanced decomposition."""
    return 1 + (balance_dist + 1) * 2 * math.log2(max(n_hyperedges, 2))


def width_bound(tw: int) -> int:
    """Width of the exported tree decomposition: 9·tw + 8."""
    return 9 * tw + 8


def adhesion_bound(tw: int) -> int:
    """wl(su(G)) ≤ 3·(tw + 1)."""
    return 3 * (tw + 1)


def torso_width_bound(lam_ep: int, wl_ep: int) -> int:
    return 3 * max(lam_ep, wl_ep) - 1


def init_phi_bound(n: int) -> float:
    """Φ of the initial balanced tree: at most 2·n (sum of i/2^i ≤ 2)."""
    return 2.0 * max(n, 1)


# Empirical per-operation budget factors, in units of log2 ‖G‖.  These are
# the 2^{O(k)} multipliers of the amortized bounds at the parameters used by
# the scaling tests (degree cap 5, balance distance 8).
AMORTIZED_SIZE_FACTOR = 400.0
DESCRIPTION_SIZE_FACTOR = 60.0
