"""
Tests for the total-spin sector decomposition.
"""

import pytest

from fourierlcu.core.su2.sectors import spin_sectors, two_j_of
from fourierlcu.libs.utils.errors import DecompositionError


def test_four_qubits():
    """Test j = 2, 1, 0 with multiplicities 1, 3, 2"""
    sectors = spin_sectors(4)
    assert sectors.js == (2.0, 1.0, 0.0)
    assert sectors.mults == (1, 3, 2)
    assert sectors.multiplicity(1) == 3
    assert sectors.j_min == 0.0


def test_odd_register_has_half_integer_spins():
    """Test j = 3/2, 1/2 for three qubits"""
    sectors = spin_sectors(3)
    assert sectors.js == (1.5, 0.5)
    assert sectors.mults == (1, 2)


@pytest.mark.parametrize("n", [1, 2, 5, 12, 20, 33, 64])
def test_dimension_and_cost_bound(n):
    """Test that the sectors fill the register and the bound closed form"""
    sectors = spin_sectors(n)
    assert sectors.dimension_total() == 2**n
    assert sectors.cost_bound() == (n + 1) * (n + 2) * (n + 3) // 6


def test_two_j_validation():
    """Test half-integer validation"""
    assert two_j_of(1.5) == 3
    with pytest.raises(DecompositionError):
        two_j_of(0.3)
    with pytest.raises(DecompositionError):
        spin_sectors(0)
