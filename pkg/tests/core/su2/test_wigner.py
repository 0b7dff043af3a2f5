"""
Tests for Wigner rotation matrices.
"""

import numpy as np
import pytest

from fourierlcu.core.su2.haar import EulerAngles
from fourierlcu.core.su2.wigner import spin_matrices, wigner_big_d, wigner_d_matrix, wigner_small_d
from fourierlcu.libs.utils.errors import DecompositionError


def test_known_values():
    """Test closed forms for j = 1/2 and j = 1"""
    theta = 0.8
    assert np.isclose(wigner_small_d(0.5, 0.5, 0.5, theta), np.cos(theta / 2))
    assert np.isclose(wigner_small_d(0.5, 0.5, -0.5, theta), -np.sin(theta / 2))
    assert np.isclose(wigner_small_d(1, 1, 0, theta), -np.sin(theta) / np.sqrt(2))
    assert np.isclose(wigner_small_d(1, 0, 0, theta), np.cos(theta))


def test_endpoints():
    """Test theta = 0 and theta = pi without 0**0 problems"""
    assert np.allclose(wigner_d_matrix(1.5, 0.0), np.eye(4))
    assert np.allclose(np.abs(wigner_d_matrix(1.5, np.pi)), np.fliplr(np.eye(4)))


@pytest.mark.parametrize("j", [0.5, 1, 2.5, 4])
def test_big_d_is_unitary(j):
    """Test unitarity of D^j(g)"""
    d = wigner_big_d(j, EulerAngles(0.4, 1.9, 5.1))
    assert np.allclose(d @ d.conj().T, np.eye(int(2 * j + 1)))


def test_spin_half_matches_euler_rotation():
    """Test that D^{1/2}(g) is the single-qubit rotation with |0>, |1> as m = +1/2, -1/2"""
    g = EulerAngles(0.7, 1.2, 2.9)
    assert np.allclose(wigner_big_d(0.5, g), g.matrix())


def test_spin_matrices_commutator():
    """Test [J_x, J_y] = i J_z"""
    jx, jy, jz = spin_matrices(1.5)
    assert np.allclose(jx @ jy - jy @ jx, 1j * jz)


def test_invalid_quantum_numbers():
    """Test that |m| > j is refused"""
    with pytest.raises(DecompositionError):
        wigner_small_d(1, 2, 0, 0.3)


@pytest.mark.parametrize("j", [k / 2 for k in range(17)])
def test_small_d_is_orthogonal(j):
    """Test d^j(theta) d^j(theta)^T = I up to j = 8"""
    eye = np.eye(int(2 * j + 1))
    for theta in (0.0, 0.3, 1.7, np.pi):
        d = wigner_d_matrix(j, theta)
        assert np.abs(d @ d.T - eye).max() <= 1e-9
