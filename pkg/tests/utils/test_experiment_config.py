"""
Tests for experiment configuration loading.
"""

import pytest

from fourierlcu.libs.utils.enums import ExperimentKind, GraphKind
from fourierlcu.libs.utils.errors import ConfigError
from fourierlcu.utils.experiment_config import apply_override, config_hash, load_config, load_config_file


def test_defaults():
    """Test the configuration without file or overrides"""
    config = load_config()
    assert config.experiment == ExperimentKind.PENALTY
    assert config.instance.kind == GraphKind.REGULAR
    assert config.evaluator is None


def test_apply_override():
    """Test nested keys and YAML scalar parsing"""
    data = apply_override({}, "instance.n=8")
    apply_override(data, "modes=[1, 3]")
    apply_override(data, "experiment=xy")
    assert data == {"instance": {"n": 8}, "modes": [1, 3], "experiment": "xy"}


def test_apply_override_invalid():
    """Test malformed assignments"""
    with pytest.raises(ConfigError):
        apply_override({}, "no-equals-sign")
    with pytest.raises(ConfigError):
        apply_override({"seed": 3}, "seed.inner=1")


def test_load_config_file(tmp_path):
    """Test a YAML file with overrides applied on top"""
    path = tmp_path / "exp.yaml"
    path.write_text("experiment: xy\ninstance:\n  n: 10\n  k: 3\nseed: 5\n")
    config = load_config(path, ["seed=9", "pool.circuits=50"])
    assert config.experiment == ExperimentKind.XY
    assert config.instance.n == 10
    assert config.instance.k == 3
    assert config.seed == 9
    assert config.pool.circuits == 50


def test_load_config_errors(tmp_path):
    """Test missing files, non-mapping YAML and invalid values"""
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.yaml")
    bad = tmp_path / "list.yaml"
    bad.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError):
        load_config_file(bad)
    with pytest.raises(ConfigError):
        load_config(overrides=["pool.pool_size=5", "pool.circuits=10"])
    with pytest.raises(ConfigError):
        load_config(overrides=["unknown_key=1"])
    with pytest.raises(ConfigError):
        load_config(overrides=["instance.file=/nonexistent/graph.txt"])


def test_config_hash():
    """Test that the hash is stable and follows every field"""
    a = load_config(overrides=["seed=1"])
    assert config_hash(a) == config_hash(load_config(overrides=["seed=1"]))
    assert config_hash(a) != config_hash(load_config(overrides=["seed=2"]))
    assert len(config_hash(a)) == 64
