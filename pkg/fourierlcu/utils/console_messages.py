"""Console output messages for the fourierlcu CLI."""

from typing import Iterable, Optional

from rich.console import Console
from rich.panel import Panel
from rich.style import Style
from rich.table import Table

from fourierlcu.utils.colors import FourierLcuColors

console = Console()


def _fmt(value: Optional[float], digits: int = 6) -> str:
    if value is None:
        return "n/a"
    return f"{value:.{digits}g}"


class DecomposeMessages:
    """Messages for the decompose command."""

    @staticmethod
    def create_summary_table(title: str, rows: Iterable[tuple[str, str]]):
        table = Table(title=title, show_header=True, header_style=FourierLcuColors.INFO)
        table.add_column("Quantity", style=FourierLcuColors.INFO)
        table.add_column("Value", style=FourierLcuColors.VALUE, justify="right")
        for name, value in rows:
            table.add_row(name, value)
        return table

    @staticmethod
    def written(path):
        console.print(f"💾 [{FourierLcuColors.TEXT_DIM}]Decomposition written to[/{FourierLcuColors.TEXT_DIM}] {path}")


class RunMessages:
    """Messages for the run and optimize commands."""

    @staticmethod
    def starting(kind: str, n: int, k: int, modes, evaluator: str, config_hash: str):
        console.print()
        console.print(
            f"🧪 [bold {FourierLcuColors.PRIMARY}]{kind}[/bold {FourierLcuColors.PRIMARY}] experiment "
            f"on n={n}, k={k}, modes {', '.join(str(m) for m in modes)} "
            f"[{FourierLcuColors.TEXT_DIM}]({evaluator}, config {config_hash[:12]})[/{FourierLcuColors.TEXT_DIM}]"
        )

    @staticmethod
    def create_results_table(title: str, results):
        """One row per mode, columns in experiment-table order."""
        table = Table(title=title, show_header=True, header_style=FourierLcuColors.INFO)
        table.add_column("Mode", justify="right")
        table.add_column("Variant", style=FourierLcuColors.INFO)
        table.add_column("<H>", justify="right")
        table.add_column("Γ", justify="right")
        table.add_column("η", justify="right")
        table.add_column("CVaR", justify="right")
        table.add_column("P(feasible)", justify="right")
        table.add_column("P(optimal)", justify="right")
        table.add_column("<H | feasible>", justify="right")
        table.add_column("Best", justify="right")
        for result in results:
            report = result.report
            table.add_row(
                str(result.mode),
                result.variant.value,
                _fmt(report.expectation),
                _fmt(report.gamma),
                _fmt(report.eta),
                _fmt(report.cvar_upper),
                _fmt(report.p_feasible, 4),
                _fmt(report.p_optimal, 4),
                _fmt(report.expectation_given_feasible),
                _fmt(report.best_feasible),
            )
        return table

    @staticmethod
    def optimum(value: float, count: int):
        console.print(
            f"🎯 [{FourierLcuColors.TEXT_DIM}]Exact optimum[/{FourierLcuColors.TEXT_DIM}] "
            f"[bold {FourierLcuColors.VALUE}]{value:.6g}[/bold {FourierLcuColors.VALUE}] "
            f"[{FourierLcuColors.TEXT_DIM}]({count} optimal string(s))[/{FourierLcuColors.TEXT_DIM}]"
        )

    @staticmethod
    def outputs_written(directory, count: int):
        console.print(
            f"\n💾 [{FourierLcuColors.SUCCESS}]{count} file(s) written to[/{FourierLcuColors.SUCCESS}] {directory}\n"
        )


class VerifyMessages:
    """Messages for the verify command."""

    @staticmethod
    def create_checks_table(outcomes):
        table = Table(title="Acceptance checks")
        table.add_column("Group", justify="left")
        table.add_column("Check", justify="left")
        table.add_column("Result", justify="left")
        table.add_column("Detail", justify="left")
        table.add_column("Time (s)", justify="right")
        for outcome in outcomes:
            table.add_row(
                outcome.group,
                outcome.name,
                "pass" if outcome.passed else "fail",
                outcome.detail,
                f"{outcome.seconds:.2f}",
                style=Style(color="green" if outcome.passed else "red"),
            )
        return table

    @staticmethod
    def create_summary_panel(passed: int, failed: int):
        if failed:
            return Panel(
                f"[bold][{FourierLcuColors.ERROR}]{failed} check(s) failed[/{FourierLcuColors.ERROR}][/bold], "
                f"{passed} passed",
                border_style=FourierLcuColors.ERROR,
            )
        return Panel(
            f"[bold][{FourierLcuColors.SUCCESS}]All {passed} check(s) passed[/{FourierLcuColors.SUCCESS}][/bold]",
            border_style=FourierLcuColors.SUCCESS,
        )

    @staticmethod
    def nothing_selected(pattern: str):
        console.print(
            f"⚠️  [{FourierLcuColors.WARNING}]No check matches filter '{pattern}'[/{FourierLcuColors.WARNING}]"
        )


class GraphMessages:
    """Messages for graph-gen and solve-exact."""

    @staticmethod
    def graph_written(path, nodes: int, edges: int, k: int):
        console.print(
            f"🕸️  [{FourierLcuColors.SUCCESS}]Graph with {nodes} nodes and {edges} edges (k={k}) written to"
            f"[/{FourierLcuColors.SUCCESS}] {path}"
        )

    @staticmethod
    def swap_summary(colors: int, layers: int, edges: int, reference: int):
        style = FourierLcuColors.SUCCESS if edges == reference else FourierLcuColors.WARNING
        console.print(
            f"[{FourierLcuColors.TEXT_DIM}]{colors} edge colors, {layers} SWAP layer(s); "
            f"[/{FourierLcuColors.TEXT_DIM}][{style}]{edges} logical edges (reference {reference})[/{style}]"
        )

    @staticmethod
    def create_solution_table(result, limit: int):
        table = Table(
            title=f"Optimum {result.value:.6g} ({result.mode.value})",
            show_header=True,
            header_style=FourierLcuColors.INFO,
        )
        table.add_column("#", justify="right")
        table.add_column("Bitstring (qubit 0 rightmost)", style=FourierLcuColors.VALUE)
        for i, bits in enumerate(result.bitstrings[:limit]):
            table.add_row(str(i + 1), bits)
        return table


class CLIMessages:
    """Messages for the CLI commands."""

    @staticmethod
    def get_version_header(version: str):
        """Get version header message."""
        messages = [
            (
                f"〰️ [bold {FourierLcuColors.PRIMARY}]fourierlcu[/bold {FourierLcuColors.PRIMARY}]",
                "center",
            ),
            (
                f"[{FourierLcuColors.TEXT_DIM}]Version[/{FourierLcuColors.TEXT_DIM}] [bold {FourierLcuColors.SUCCESS}]{version}[/bold {FourierLcuColors.SUCCESS}]",
                "center",
            ),
            ("", None),
            (
                f"[{FourierLcuColors.TEXT_DIM}]Fourier LCU decompositions and sampled QAOA experiments[/{FourierLcuColors.TEXT_DIM}]",
                "center",
            ),
            ("", None),
        ]
        return messages

    @staticmethod
    def get_main_help():
        """Get main help message."""
        return f"""〰️ [bold {FourierLcuColors.PRIMARY}]fourierlcu[/bold {FourierLcuColors.PRIMARY}] - Fourier LCU decompositions and sampled QAOA experiments

    [{FourierLcuColors.TEXT_DIM}]Decompose diagonal and XY-mixer unitaries into sampled branches and compare them with coherent circuits.[/{FourierLcuColors.TEXT_DIM}]

    [{FourierLcuColors.TEXT_PRIMARY}]Quick Start:[/{FourierLcuColors.TEXT_PRIMARY}]
    1. [bold {FourierLcuColors.COMMAND}]fourierlcu verify[/bold {FourierLcuColors.COMMAND}]        - Run the acceptance checks
    2. [bold {FourierLcuColors.COMMAND}]fourierlcu graph-gen[/bold {FourierLcuColors.COMMAND}]     - Generate an instance
    3. [bold {FourierLcuColors.COMMAND}]fourierlcu run[/bold {FourierLcuColors.COMMAND}]           - Run an experiment suite"""

    @staticmethod
    def get_decompose_help():
        return f"""〰️ [bold {FourierLcuColors.COMMAND}]Decompose[/bold {FourierLcuColors.COMMAND}] a unitary into a linear combination of unitaries

    [{FourierLcuColors.TEXT_DIM}]Examples:[/{FourierLcuColors.TEXT_DIM}]
      [{FourierLcuColors.PRIMARY}]fourierlcu decompose diagonal --n 12 --b 4 --gamma 0.5[/{FourierLcuColors.PRIMARY}]
      [{FourierLcuColors.PRIMARY}]fourierlcu decompose xy --n 12 --beta 0.3 --pool 100000[/{FourierLcuColors.PRIMARY}]"""

    @staticmethod
    def get_run_help():
        return f"""🧪 [bold {FourierLcuColors.COMMAND}]Run[/bold {FourierLcuColors.COMMAND}] an experiment suite

    Runs the penalty (modes 1-5) or XY-mixer (modes 1-7) experiments and writes
    metric reports, value histograms, optimizer traces and circuits.

    [{FourierLcuColors.TEXT_DIM}]Examples:[/{FourierLcuColors.TEXT_DIM}]
      [{FourierLcuColors.PRIMARY}]fourierlcu run --config experiment.yaml[/{FourierLcuColors.PRIMARY}]
      [{FourierLcuColors.PRIMARY}]fourierlcu run --experiment xy --mode 1 --mode 6[/{FourierLcuColors.PRIMARY}]
      [{FourierLcuColors.PRIMARY}]fourierlcu run --set instance.n=10 --set optimizer.grid_points=5[/{FourierLcuColors.PRIMARY}]"""

    @staticmethod
    def get_verify_help():
        return f"""✅ [bold {FourierLcuColors.COMMAND}]Verify[/bold {FourierLcuColors.COMMAND}] decompositions and samplers against exact oracles

    Exits with a nonzero code when any check fails.

    [{FourierLcuColors.TEXT_DIM}]Examples:[/{FourierLcuColors.TEXT_DIM}]
      [{FourierLcuColors.PRIMARY}]fourierlcu verify[/{FourierLcuColors.PRIMARY}]
      [{FourierLcuColors.PRIMARY}]fourierlcu verify --filter su2[/{FourierLcuColors.PRIMARY}]"""

    @staticmethod
    def get_graph_gen_help():
        return f"""🕸️  [bold {FourierLcuColors.COMMAND}]Generate[/bold {FourierLcuColors.COMMAND}] a densest-k-subgraph instance file

    [{FourierLcuColors.TEXT_DIM}]Examples:[/{FourierLcuColors.TEXT_DIM}]
      [{FourierLcuColors.PRIMARY}]fourierlcu graph-gen regular --n 12 --degree 3 --seed 7[/{FourierLcuColors.PRIMARY}]
      [{FourierLcuColors.PRIMARY}]fourierlcu graph-gen heavy-hex --rows 5 --cols 3 --swap-layers 3[/{FourierLcuColors.PRIMARY}]"""

    @staticmethod
    def get_solve_exact_help():
        return f"""🎯 [bold {FourierLcuColors.COMMAND}]Solve[/bold {FourierLcuColors.COMMAND}] an instance file exactly

    Exhaustive over all strings or over the weight-k strings only."""

    @staticmethod
    def get_optimize_help():
        return f"""📈 [bold {FourierLcuColors.COMMAND}]Optimize[/bold {FourierLcuColors.COMMAND}] the parameters of a single circuit variant

    Grid search followed by Nelder-Mead refinement for one objective."""
