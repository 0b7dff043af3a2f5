"""
Structured text records with a metadata header.

Every file starts with ``# @META:{json}``; record bodies are YAML, tables are CSV.
"""

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, Union

import numpy as np
import scipy
import yaml
from loguru import logger

from fourierlcu import __version__
from fourierlcu.constants import RECORD_TOOL
from fourierlcu.libs.utils.errors import ConfigError

META_PREFIX = "# @META:"


@dataclass
class RecordMeta:
    schema: str
    config_hash: str = ""
    tool: str = RECORD_TOOL
    version: str = __version__
    numpy: str = field(default_factory=lambda: np.__version__)
    scipy: str = field(default_factory=lambda: scipy.__version__)

    @classmethod
    def from_comment(cls, comment: str) -> Optional["RecordMeta"]:
        """Try to parse metadata from a comment line."""
        if not comment.startswith(META_PREFIX):
            return None
        try:
            return cls(**json.loads(comment[len(META_PREFIX) :].strip()))
        except (json.JSONDecodeError, TypeError) as e:
            logger.warning(f"Failed to parse metadata from comment: {e}")
            return None

    def to_comment(self) -> str:
        return f"{META_PREFIX}{json.dumps(asdict(self), sort_keys=True)}"


def to_plain(value: Any) -> Any:
    """Convert numpy scalars/arrays and tuples into YAML-safe builtins."""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_plain(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, Path):
        return str(value)
    return value


def dumps_record(schema: str, body: Any, config_hash: str = "") -> str:
    meta = RecordMeta(schema=schema, config_hash=config_hash)
    return f"{meta.to_comment()}\n{yaml.safe_dump(to_plain(body), sort_keys=False)}"


def loads_record(text: str) -> tuple[RecordMeta, Any]:
    first, _, rest = text.partition("\n")
    meta = RecordMeta.from_comment(first)
    if meta is None:
        raise ConfigError("Record is missing its '# @META:' header")
    return meta, yaml.safe_load(rest)


def write_record(path: Union[str, Path], schema: str, body: Any, config_hash: str = "") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_record(schema, body, config_hash), encoding="utf-8")
    return path


def read_record(path: Union[str, Path]) -> tuple[RecordMeta, Any]:
    return loads_record(Path(path).read_text(encoding="utf-8"))


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(to_plain(value))


def write_csv(
    path: Union[str, Path], schema: str, header: Sequence[str], rows: Iterable[Sequence[Any]], config_hash: str = ""
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    buffer = io.StringIO()
    buffer.write(RecordMeta(schema=schema, config_hash=config_hash).to_comment() + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    path.write_text(buffer.getvalue(), encoding="utf-8")
    return path


def read_csv(path: Union[str, Path]) -> tuple[RecordMeta, list[str], list[list[str]]]:
    text = Path(path).read_text(encoding="utf-8")
    first, _, rest = text.partition("\n")
    meta = RecordMeta.from_comment(first)
    if meta is None:
        raise ConfigError(f"{path} is missing its '# @META:' header")
    rows = list(csv.reader(io.StringIO(rest)))
    return meta, rows[0], rows[1:]


def write_text(path: Union[str, Path], schema: str, text: str, config_hash: str = "") -> Path:
    """Free-form text (for example a gate list) behind the metadata line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = RecordMeta(schema=schema, config_hash=config_hash)
    path.write_text(f"{meta.to_comment()}\n{text}", encoding="utf-8")
    return path
