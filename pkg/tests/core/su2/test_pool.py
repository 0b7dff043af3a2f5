"""
Tests for Haar pools of the XY-mixer LCU.
"""

import numpy as np
import pytest

from fourierlcu.core.qpd import LcuChannel
from fourierlcu.core.su2.pool import XyLcuFamily, build_su2_pool, estimate_gamma
from fourierlcu.libs.utils.errors import DecompositionError


@pytest.fixture(scope="module")
def family():
    return XyLcuFamily(2, pool_size=4000, circuits=64, gamma_samples=4000, seed=11)


def test_pool_statistics(family):
    """Test the pool weights and the cost estimate"""
    pool = family.pool(0.3)
    assert pool.size == 4000
    assert np.isclose(pool.sample_probs.sum(), 1.0)
    assert pool.cost_bound() == 10
    assert 1.0 - 3 * pool.gamma_sigma <= pool.gamma_hat <= pool.cost_bound() + 3 * pool.gamma_sigma
    assert pool.gamma_sigma > 0
    assert np.isclose(pool.branch(0).abs_weight, abs(pool.weights[0]))


def test_selection_is_repeatable(family):
    """Test that selecting at the same beta gives the same branches"""
    a = family.select(0.3)
    b = family.select(0.3)
    assert a is b
    assert len(a) == 64
    assert a.phases.shape == (64,)
    fresh = XyLcuFamily(2, pool_size=4000, circuits=64, gamma_samples=4000, seed=11).select(0.3)
    assert np.array_equal(fresh.indices, a.indices)


def test_selection_channel(family):
    """Test the finite surrogate built from a selection"""
    selection = family.select(0.3)
    channel = LcuChannel.from_su2_selection(selection)
    assert len(channel.branches) == 64
    assert np.isclose(channel.gamma_cost, selection.gamma_hat)
    assert channel.rotations.shape == (64, 2, 2)


def test_build_su2_pool_rejects_oversized_selection():
    """Test circuits larger than the pool"""
    with pytest.raises(DecompositionError):
        build_su2_pool(2, 0.3, pool_size=10, circuits=20, gamma_samples=10, seed=1)


def test_estimate_gamma():
    """Test the squared mean and its standard error"""
    gamma, sigma = estimate_gamma(np.array([1.0, 3.0, 1.0, 3.0]))
    assert gamma == 4.0
    assert sigma > 0


@pytest.mark.parametrize("n", [4, 8, 12])
def test_gamma_estimate_below_cost_bound(n):
    """Test that the estimated cost stays under (n+1)(n+2)(n+3)/6 across a beta grid"""
    family = XyLcuFamily(n, pool_size=100, circuits=10, gamma_samples=5000, seed=n)
    bound = (n + 1) * (n + 2) * (n + 3) // 6
    for beta in np.linspace(0.0, np.pi, 20):
        pool = family.pool(beta)
        assert pool.cost_bound() == bound
        assert pool.gamma_hat <= bound + 3 * pool.gamma_sigma
