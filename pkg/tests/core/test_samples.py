"""
Tests for weighted sample sets.
"""

import numpy as np
import pytest

from fourierlcu.core.samples import NO_BRANCH, SampleSet, format_bitstring, parse_bitstring
from fourierlcu.libs.utils.errors import DimensionError, SamplingError


def test_bitstring_is_big_endian():
    """Test that the rightmost character is qubit 0"""
    assert format_bitstring(1, 4) == "0001"
    assert format_bitstring(8, 4) == "1000"
    assert parse_bitstring("0110") == 6


def test_from_counts_drops_zeros():
    """Test building a sample set from a count vector"""
    samples = SampleSet.from_counts(2, np.array([3, 0, 0, 5]))
    assert samples.outcomes.tolist() == [0, 3]
    assert samples.weights.tolist() == [3.0, 5.0]
    assert np.all(samples.branches == NO_BRANCH)
    assert samples.total_weight == 8.0


def test_merged_collapses_duplicate_records():
    """Test that duplicate (outcome, branch) records are summed"""
    samples = SampleSet(2, [3, 1, 3, 3], [0, 0, 0, 1], [1.0, 2.0, 4.0, 1.0])
    merged = samples.merged()
    assert merged.outcomes.tolist() == [1, 3, 3]
    assert merged.branches.tolist() == [0, 0, 1]
    assert merged.weights.tolist() == [2.0, 5.0, 1.0]


def test_distribution_is_normalized():
    """Test the dense distribution over all outcomes"""
    samples = SampleSet(2, [0, 2, 2], [0, 1, 0], [1.0, 1.0, 2.0])
    dist = samples.distribution()
    assert dist.shape == (4,)
    assert np.allclose(dist, [0.25, 0.0, 0.75, 0.0])


def test_branch_frequencies():
    """Test branch frequencies ignore records without a branch"""
    samples = SampleSet(1, [0, 1, 1], [0, 2, NO_BRANCH], [1.0, 3.0, 10.0])
    assert np.allclose(samples.branch_frequencies(3), [0.25, 0.0, 0.75])


def test_rows_keep_branch_provenance():
    """Test the (bitstring, branch, weight) row form"""
    samples = SampleSet(3, [5, 1], [2, 0], [1.5, 0.5])
    rows = samples.to_rows()
    assert rows == [("001", 0, 0.5), ("101", 2, 1.5)]
    restored = SampleSet.from_rows(3, rows)
    assert restored.outcomes.tolist() == [1, 5]


def test_negative_weights_rejected():
    """Test that negative weights are refused"""
    with pytest.raises(SamplingError):
        SampleSet(1, [0], [0], [-1.0])


def test_concat_requires_parts():
    """Test that concatenating nothing fails"""
    with pytest.raises(SamplingError):
        SampleSet.concat([])


def test_length_mismatch_and_empty_distribution():
    """Test mismatched columns and a zero-weight distribution"""
    with pytest.raises(DimensionError):
        SampleSet(1, [0, 1], [0], [1.0, 1.0])
    with pytest.raises(SamplingError):
        SampleSet(1, [0], [0], [0.0]).distribution()
