from pathlib import Path
from typing import Optional

from loguru import logger
from rich.console import Console

from fourierlcu.commands.middleware import handle_errors
from fourierlcu.constants import HEAVY_HEX_REFERENCE_EDGES
from fourierlcu.core.problems.dks import DksInstance, build_dks
from fourierlcu.core.problems.graphs import erdos_renyi_graph, heavy_hex_swap_graph, random_regular_graph
from fourierlcu.core.problems.io import write_instance
from fourierlcu.core.qaoa import swap_network_cost_layer, warm_start_feasibility
from fourierlcu.core.sim.circuit import cz_count, to_gate_list
from fourierlcu.libs.settings import libs_settings
from fourierlcu.libs.utils.enums import GraphKind
from fourierlcu.utils.colors import FourierLcuColors
from fourierlcu.utils.console_messages import GraphMessages
from fourierlcu.utils.records import RecordMeta, write_text

console = Console()


def default_output(kind: GraphKind, n: int, seed: int) -> Path:
    return libs_settings.output_dir / f"{kind.value}-n{n}-s{seed}.txt"


@handle_errors
def graph_gen_command(
    kind: GraphKind,
    n: int = 12,
    degree: int = 3,
    p: float = 0.5,
    rows: int = 5,
    cols: int = 3,
    swap_layers: int = 3,
    sum_duplicates: bool = False,
    seed: int = 7,
    k: Optional[int] = None,
    cost_gamma: Optional[float] = None,
    output: Optional[Path] = None,
) -> DksInstance:
    """Generate a graph, wrap it as a densest-k instance and write the edge list.

    For heavy-hex graphs ``cost_gamma`` also writes the SWAP-network cost layer
    at that angle next to the instance.
    """
    hh = None
    if kind == GraphKind.REGULAR:
        graph = random_regular_graph(n, degree, seed)
    elif kind == GraphKind.ERDOS_RENYI:
        graph = erdos_renyi_graph(n, p, seed)
    else:
        hh = heavy_hex_swap_graph(rows, cols, swap_layers, sum_duplicates=sum_duplicates)
        graph = hh.graph
    instance = build_dks(graph, graph.n_nodes // 3 if k is None else k)
    output = output if output is not None else default_output(kind, graph.n_nodes, seed)
    write_instance(output, instance, comment=RecordMeta(schema="instance").to_comment())
    GraphMessages.graph_written(output, graph.n_nodes, graph.num_edges, instance.k)

    if hh is not None:
        GraphMessages.swap_summary(hh.num_colors, len(hh.swap_layers), graph.num_edges, HEAVY_HEX_REFERENCE_EDGES)
        if cost_gamma is not None:
            circuit, _ = swap_network_cost_layer(hh, instance.objective_qubo, cost_gamma)
            path = output.with_name(f"{output.stem}-cost.txt")
            write_text(path, "gate-list", to_gate_list(circuit))
            console.print(
                f"[{FourierLcuColors.TEXT_DIM}]Cost layer: {len(circuit)} gates, "
                f"{cz_count(circuit)} CZ-equivalent, written to[/{FourierLcuColors.TEXT_DIM}] {path}"
            )
    feasibility = warm_start_feasibility(instance.n, instance.k)
    logger.debug(f"Warm-start feasibility for n={instance.n}, k={instance.k}: {feasibility}")
    console.print(
        f"[{FourierLcuColors.TEXT_DIM}]Warm-start feasibility P(wt = {instance.k}):[/{FourierLcuColors.TEXT_DIM}] "
        f"[{FourierLcuColors.VALUE}]{feasibility:.4f}[/{FourierLcuColors.VALUE}]"
    )
    return instance
