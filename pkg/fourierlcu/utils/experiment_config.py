"""Experiment configuration loading: YAML file, then ``dotted.key=value`` overrides."""

import hashlib
import json
from pathlib import Path
from typing import Any, Optional, Sequence

import yaml
from loguru import logger
from pydantic import ValidationError

from fourierlcu.libs.utils.errors import ConfigError
from fourierlcu.types import ExperimentConfig


def load_config_file(path: Path) -> dict:
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in {path}: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping at the top level")
    return data


def apply_override(data: dict, assignment: str) -> dict:
    """Set ``a.b.c=value`` in a nested dict; the value is parsed as a YAML scalar."""
    key, sep, raw = assignment.partition("=")
    if not sep or not key.strip():
        raise ConfigError(f"Override must look like key=value, got {assignment!r}")
    try:
        value: Any = yaml.safe_load(raw) if raw.strip() else None
    except yaml.YAMLError as e:
        raise ConfigError(f"Cannot parse value in {assignment!r}: {e}")
    parts = key.strip().split(".")
    node = data
    for part in parts[:-1]:
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            raise ConfigError(f"Cannot set {key}: '{part}' is not a section")
        node = child
    node[parts[-1]] = value
    logger.debug(f"Config override {key} = {value!r}")
    return data


def load_config(path: Optional[Path] = None, overrides: Sequence[str] = ()) -> ExperimentConfig:
    data = load_config_file(path) if path is not None else {}
    for assignment in overrides:
        apply_override(data, assignment)
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid experiment config:\n{e}")


def config_hash(config: ExperimentConfig) -> str:
    """SHA-256 of the canonical JSON dump; the worker count is part of it."""
    canonical = json.dumps(config.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
