"""
Tests for the XY-mixer Fourier coefficients.
"""

import numpy as np
import pytest

from fourierlcu.core.su2.haar import EulerAngles, haar_sample
from fourierlcu.core.su2.xy import (
    coeff_general,
    coeff_xy,
    mc_block_estimates,
    mc_error_ratio,
    mc_reconstruct_xy,
    xy_block_unitaries,
    xy_eigenphase_error,
    xy_hamiltonian_dense,
    xy_spectrum,
    xy_unitary_dense,
)
from fourierlcu.libs.utils.errors import DecompositionError, DimensionError, SamplingError


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_spectrum_matches_dense_hamiltonian(n):
    """Test the sector eigenvalues 4 (j(j+1) - m^2)"""
    dense = np.linalg.eigvalsh(xy_hamiltonian_dense(n))
    assert np.allclose(np.sort(dense), xy_spectrum(n))


def test_hamiltonian_conserves_weight():
    """Test that J_x^2 + J_y^2 commutes with the Hamming weight"""
    n = 3
    weight = np.diag([bin(i).count("1") for i in range(2**n)]).astype(complex)
    h = xy_hamiltonian_dense(n)
    assert np.allclose(h @ weight, weight @ h)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_closed_form_matches_general_formula(n):
    """Test the closed-form coefficient against sum_j (2j+1) Tr[U_j D^j(g)^dagger]"""
    beta = 0.37
    blocks = xy_block_unitaries(n, beta)
    for seed in range(4):
        g = haar_sample(seed)
        assert np.isclose(coeff_xy(n, beta, g), coeff_general(blocks, g, n), atol=1e-9)


def test_identity_coefficient():
    """Test a(g) at beta = 0 and g = identity is the cost bound"""
    assert np.isclose(coeff_xy(3, 0.0, EulerAngles(0.0, 0.0, 0.0)), 4**2 + 2**2)


def test_general_formula_checks_sectors():
    """Test that missing or non-unitary blocks are refused"""
    blocks = xy_block_unitaries(3, 0.2)
    g = EulerAngles(0.1, 0.2, 0.3)
    with pytest.raises(DecompositionError):
        coeff_general({1.5: blocks[1.5]}, g, 3)
    with pytest.raises(DecompositionError):
        coeff_general({1.5: 2 * blocks[1.5], 0.5: blocks[0.5]}, g, 3)


def test_dense_unitary():
    """Test exp(-i beta H) is unitary and diagonal in the weight sectors"""
    u = xy_unitary_dense(2, 0.5)
    assert np.allclose(u @ u.conj().T, np.eye(4))
    assert np.isclose(abs(u[0, 0]), 1.0)


def test_monte_carlo_reconstruction():
    """Test the Haar average of a(g) R(g)^{(x)n} approaches U_XY"""
    _, error = mc_reconstruct_xy(2, 0.4, 20_000, seed=5)
    # Frobenius error of order sqrt(dim * bound / N)
    assert error < 5 * np.sqrt(4 * 10 / 20_000)
    with pytest.raises(DimensionError):
        mc_reconstruct_xy(7, 0.4, 10, seed=0)


@pytest.mark.parametrize("beta", [0.1, 0.37])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_dense_unitary_eigenphases(n, beta):
    """Test that U_XY(beta) has eigenvalues exp(-i beta E_jm) with the sector multiplicities"""
    assert xy_eigenphase_error(n, beta) <= 1e-8


def test_block_estimates_share_one_stream():
    """Test that the block mean is the estimate over all blocks"""
    blocks = mc_block_estimates(2, 0.4, 500, 4, seed=9)
    assert blocks.shape == (4, 4, 4)
    estimate, _ = mc_reconstruct_xy(2, 0.4, 2000, seed=9)
    assert np.allclose(blocks.mean(axis=0), estimate, atol=1e-10)
    with pytest.raises(SamplingError):
        mc_block_estimates(2, 0.4, 0, 4, seed=9)


def test_monte_carlo_error_scaling():
    """Test that four times the samples roughly halves the error for most seeds"""
    ratios = [mc_error_ratio(3, 0.4, 2500, seed=seed, repeats=8) for seed in (5, 6, 7)]
    assert sum(ratio <= 0.6 for ratio in ratios) >= 2
