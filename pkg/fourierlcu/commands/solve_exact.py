from pathlib import Path
from typing import Optional

from rich.console import Console

from fourierlcu.commands.middleware import handle_errors
from fourierlcu.core.problems.io import read_instance
from fourierlcu.core.problems.solver import SolveResult, solve_instance
from fourierlcu.libs.utils.enums import SolveMode
from fourierlcu.utils.console_messages import GraphMessages
from fourierlcu.utils.records import write_record

console = Console()


@handle_errors
def solve_exact_command(
    path: Path,
    k: Optional[int] = None,
    mode: SolveMode = SolveMode.FEASIBLE_ONLY,
    limit: int = 10,
    output: Optional[Path] = None,
) -> SolveResult:
    """Exact optimum of an instance file; optionally write the optimal strings."""
    instance = read_instance(path, k=k)
    result = solve_instance(instance, mode)
    console.print(GraphMessages.create_solution_table(result, limit))
    if len(result.solutions) > limit:
        console.print(f"... and {len(result.solutions) - limit} more")
    if output is not None:
        write_record(
            output,
            "exact-solution",
            {
                "instance": str(path),
                "n": instance.n,
                "k": instance.k,
                "mode": mode.value,
                "optimum": result.value,
                "solutions": result.bitstrings,
            },
        )
    return result
