"""
Tests for the discrete-Fourier LCU of diagonal unitaries.
"""

import numpy as np
import pytest

from fourierlcu.core.lcu_diagonal import (
    DiagonalLcu,
    build_diagonal_lcu,
    composed_values,
    hamming_penalty_values,
    hamming_weight_function,
    indicator_window_values,
    quadratic_form_function,
    reconstruct_unitary_error,
)
from fourierlcu.libs.utils.errors import DecompositionError


@pytest.mark.parametrize("seed", range(5))
def test_reconstruction_and_cost_bound(seed):
    """Test exact reconstruction, Parseval and the m + 1 cost bound"""
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, 12))
    lcu = build_diagonal_lcu(rng.normal(size=m + 1) * 3, rng.uniform(-np.pi, np.pi))
    levels = np.arange(m + 1)
    assert np.allclose(lcu.reconstruct(levels), lcu.target(levels), atol=1e-10)
    assert np.isclose(np.linalg.norm(lcu.coeffs), 1.0)
    assert 1.0 - 1e-9 <= lcu.gamma_cost <= m + 1 + 1e-9
    assert np.isclose(lcu.branch_probs.sum(), 1.0)


def test_zero_angle_costs_one():
    """Test that gamma = 0 leaves a single branch with cost 1"""
    lcu = build_diagonal_lcu(hamming_penalty_values(12, 4), 0.0)
    assert np.isclose(lcu.gamma_cost, 1.0)
    assert lcu.active_branches.tolist() == [0]


def test_thetas_are_dft_angles():
    """Test the branch angles 2 pi j / (m + 1)"""
    lcu = build_diagonal_lcu([0.0, 1.0, 4.0, 9.0], 0.3)
    assert np.allclose(lcu.thetas, 2 * np.pi * np.arange(4) / 4)
    assert lcu.m == 3


def test_hamming_penalty_values():
    """Test (k - b)^2 over the weights"""
    assert hamming_penalty_values(4, 1).tolist() == [1.0, 0.0, 1.0, 4.0, 9.0]
    with pytest.raises(DecompositionError):
        hamming_penalty_values(3, 4)


def test_indicator_window_values():
    """Test the 0-inside, 1-outside window"""
    assert indicator_window_values(4, 1, 2).tolist() == [1.0, 0.0, 0.0, 1.0, 1.0]
    with pytest.raises(DecompositionError):
        indicator_window_values(3, 2, 1)


def test_composed_values():
    """Test tabulating f over the range of g"""
    assert composed_values(3, lambda k: k * k).tolist() == [0.0, 1.0, 4.0, 9.0]


def test_unitary_error_over_all_strings():
    """Test the exhaustive reconstruction check with the Hamming weight"""
    lcu = build_diagonal_lcu(hamming_penalty_values(6, 2), 0.7)
    assert reconstruct_unitary_error(lcu, hamming_weight_function, 6) < 1e-10


def test_quadratic_form_function():
    """Test g(x) = x^T A x on bit vectors"""
    a = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    g = quadratic_form_function(a)
    assert g(np.array([0b011, 0b111, 0b101])).tolist() == [1, 2, 0]


def test_g_outside_levels_is_refused():
    """Test that g must land in 0..m"""
    lcu = build_diagonal_lcu([0.0, 1.0], 0.5)
    with pytest.raises(DecompositionError):
        reconstruct_unitary_error(lcu, hamming_weight_function, 3)


def test_invalid_inputs():
    """Test empty and non-finite inputs"""
    with pytest.raises(DecompositionError):
        build_diagonal_lcu([], 0.1)
    with pytest.raises(DecompositionError):
        build_diagonal_lcu([0.0, np.inf], 0.1)


def test_record_round_trip():
    """Test the record form used by decompose"""
    lcu = build_diagonal_lcu(hamming_penalty_values(5, 2), -1.2)
    restored = DiagonalLcu.from_record(lcu.to_record())
    assert np.allclose(restored.coeffs, lcu.coeffs)
    assert restored.gamma_cost == lcu.gamma_cost
