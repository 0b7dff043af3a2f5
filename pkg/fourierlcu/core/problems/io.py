"""Edge-list text files.

    # fourierlcu-edgelist/1
    # n <nodes>
    # k <cardinality>        (optional)
    # lambda <penalty>       (optional)
    i j w
    ...
"""

from pathlib import Path
from typing import Optional, Union

from loguru import logger

from fourierlcu.constants import EDGE_LIST_FORMAT
from fourierlcu.core.problems.dks import DksInstance, build_dks
from fourierlcu.core.problems.graphs import Graph
from fourierlcu.libs.utils.errors import ProblemError


def dumps_graph(
    graph: Graph, k: Optional[int] = None, lam: Optional[float] = None, comment: Optional[str] = None
) -> str:
    """Serialize; ``comment`` is an extra header line (for example a record metadata line)."""
    lines = [f"# {EDGE_LIST_FORMAT}"]
    if comment is not None:
        lines.append(comment if comment.startswith("#") else f"# {comment}")
    lines.append(f"# n {graph.n_nodes}")
    if k is not None:
        lines.append(f"# k {k}")
    if lam is not None:
        lines.append(f"# lambda {lam!r}")
    lines += [f"{i} {j} {w!r}" for i, j, w in graph.edges]
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> tuple[Graph, dict]:
    header: dict = {}
    edges = []
    lines = text.splitlines()
    if not lines or lines[0].strip() != f"# {EDGE_LIST_FORMAT}":
        raise ProblemError(f"Not a {EDGE_LIST_FORMAT} file")
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2:
                header[parts[0]] = parts[1]
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ProblemError(f"Line {lineno}: expected 'i j [w]', got {line!r}")
        weight = float(parts[2]) if len(parts) == 3 else 1.0
        edges.append((int(parts[0]), int(parts[1]), weight))
    if "n" not in header:
        raise ProblemError("Missing '# n' header")
    meta = {"n": int(header["n"])}
    if "k" in header:
        meta["k"] = int(header["k"])
    if "lambda" in header:
        meta["lambda"] = float(header["lambda"])
    return Graph(meta["n"], tuple(edges)), meta


def write_graph(path: Union[str, Path], graph: Graph, k: Optional[int] = None, comment: Optional[str] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_graph(graph, k=k, comment=comment))
    return path


def write_instance(path: Union[str, Path], instance: DksInstance, comment: Optional[str] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_graph(instance.graph, k=instance.k, lam=instance.lam, comment=comment))
    return path


def read_graph(path: Union[str, Path]) -> tuple[Graph, dict]:
    path = Path(path)
    if not path.is_file():
        raise ProblemError(f"Graph file not found: {path}")
    return loads_graph(path.read_text())


def read_instance(path: Union[str, Path], k: Optional[int] = None) -> DksInstance:
    """Densest-k instance from a graph file; ``k`` overrides the file header."""
    graph, meta = read_graph(path)
    k = k if k is not None else meta.get("k")
    if k is None:
        raise ProblemError(f"{path} has no '# k' header and no k was given")
    instance = build_dks(graph, k)
    if "lambda" in meta and abs(meta["lambda"] - instance.lam) > 1e-12:
        logger.warning(f"Header lambda {meta['lambda']} differs from recomputed {instance.lam}; using recomputed")
    return instance
