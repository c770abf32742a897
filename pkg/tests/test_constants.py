import math

from dyntw import constants
from dyntw.engine import balanced_tree
from dyntw.superbranch import SuperbranchDecomposition


def test_internal_parameters():
    assert constants.internal_k(1) == 6
    assert constants.internal_k(0) == 3
    assert constants.default_degree_cap(2) == 17
    assert constants.default_balance_dist(2) == 32


def test_min_balance_dist_respects_both_terms():
    assert constants.min_balance_dist(3) == 5
    assert constants.min_balance_dist(5) == 8
    # the potential margin C·(log2(3)/2 − log2(3/2)) ≥ 1 needs C ≥ 5
    assert 5 * (math.log2(3) / 2 - math.log2(1.5)) >= 1 > 4 * (math.log2(3) / 2 - math.log2(1.5))


def test_bounds():
    assert constants.width_bound(1) == 17
    assert constants.adhesion_bound(2) == 9
    assert constants.torso_width_bound(2, 4) == 11
    assert constants.depth_bound(8, 2) == 1 + 9 * 2


def test_initial_potential_is_linear():
    for n in (1, 2, 7, 64, 1000):
        d = SuperbranchDecomposition.build(*balanced_tree(n))
        assert d.phi_recompute() <= constants.init_phi_bound(n)
