"""Command-line interface for fourierlcu."""

from pathlib import Path
from typing import List, Optional

from rich.console import Console
from typer import Argument, Exit, Option, Typer

from fourierlcu import __version__
from fourierlcu.libs.utils.enums import (
    DecomposeKind,
    EvaluatorKind,
    ExperimentKind,
    GraphKind,
    Objective,
    SolveMode,
    Variant,
)
from fourierlcu.libs.utils.log import configure_logging
from fourierlcu.utils.console_messages import CLIMessages

app = Typer(
    name="fourierlcu",
    add_completion=False,
    rich_markup_mode="rich",
    context_settings={"help_option_names": ["-h", "--help"]},
    help=CLIMessages.get_main_help(),
)
console = Console()


def version_callback(value: bool):
    if value:
        console.print()

        for message, justify in CLIMessages.get_version_header(__version__):
            if justify:
                console.print(message, justify=justify)
            else:
                console.print()

        raise Exit()


@app.callback()
def main_callback(
    version: bool = Option(
        None,
        "--version",
        "-v",
        callback=version_callback,
        is_eager=True,
        help="Print the version and exit",
    ),
    debug: bool = Option(
        False,
        "--debug",
        help="Enable debug logging",
    ),
):
    """Fourier LCU decompositions and sampled QAOA experiments"""
    configure_logging(debug)


@app.command(help=CLIMessages.get_decompose_help())
def decompose(
    kind: DecomposeKind = Argument(..., help="diagonal (Hamming penalty) or xy (XY mixer)"),
    n: int = Option(12, "--n", help="Number of qubits", min=1),
    b: Optional[int] = Option(None, "--b", help="Target Hamming weight of the penalty (default n // 3)"),
    gamma: float = Option(0.5, "--gamma", help="Angle of the diagonal unitary"),
    beta: float = Option(0.3, "--beta", help="Angle of the XY mixer"),
    pool: int = Option(100_000, "--pool", help="Haar pool size", min=1),
    circuits: int = Option(1000, "--circuits", help="Branches drawn from the pool", min=1),
    gamma_samples: int = Option(100_000, "--gamma-samples", help="Haar draws for the cost estimate", min=2),
    seed: int = Option(11, "--seed", help="Pool seed"),
    workers: int = Option(1, "--workers", help="Worker threads for pool generation", min=1),
    output: Optional[Path] = Option(None, "--output", "-o", help="Output record path"),
):
    from fourierlcu.commands.decompose import decompose_command

    decompose_command(
        kind,
        n,
        b=b,
        gamma=gamma,
        beta=beta,
        pool_size=pool,
        circuits=circuits,
        gamma_samples=gamma_samples,
        seed=seed,
        workers=workers,
        output=output,
    )


def _overrides(
    experiment: Optional[ExperimentKind],
    modes: Optional[List[int]],
    seed: Optional[int],
    shots: Optional[int],
    workers: Optional[int],
    evaluator: Optional[EvaluatorKind],
    output_dir: Optional[Path],
    assignments: Optional[List[str]],
) -> list[str]:
    from fourierlcu.commands.run import flag_overrides

    flags = flag_overrides(experiment, modes, seed, shots, workers, evaluator, output_dir)
    return flags + list(assignments or [])


@app.command(help=CLIMessages.get_run_help())
def run(
    config: Optional[Path] = Option(None, "--config", "-c", help="Experiment config (YAML)"),
    assignments: Optional[List[str]] = Option(None, "--set", help="Override a config field: dotted.key=value"),
    experiment: Optional[ExperimentKind] = Option(None, "--experiment", "-e", help="penalty or xy"),
    modes: Optional[List[int]] = Option(None, "--mode", "-m", help="Mode to run (repeatable)"),
    seed: Optional[int] = Option(None, "--seed", help="Master seed"),
    shots: Optional[int] = Option(None, "--shots", help="Shots per circuit in sampled mode", min=1),
    workers: Optional[int] = Option(None, "--workers", help="Worker threads (part of the config hash)", min=1),
    evaluator: Optional[EvaluatorKind] = Option(None, "--evaluator", help="exact or sampled"),
    output_dir: Optional[Path] = Option(None, "--output-dir", "-o", help="Output directory"),
):
    from fourierlcu.commands.run import run_command

    run_command(
        config, _overrides(experiment, modes, seed, shots, workers, evaluator, output_dir, assignments)
    )


@app.command(help=CLIMessages.get_verify_help())
def verify(
    pattern: Optional[str] = Option(None, "--filter", "-f", help="Only checks whose group.name contains this"),
):
    from fourierlcu.commands.verify import verify_command

    verify_command(pattern)


@app.command(name="graph-gen", help=CLIMessages.get_graph_gen_help())
def graph_gen(
    kind: GraphKind = Argument(..., help="regular, erdos-renyi or heavy-hex"),
    n: int = Option(12, "--n", help="Number of nodes (regular, erdos-renyi)", min=1),
    degree: int = Option(3, "--degree", help="Degree of the regular graph", min=0),
    p: float = Option(0.5, "--p", help="Edge probability (erdos-renyi)", min=0.0, max=1.0),
    rows: int = Option(5, "--rows", help="Heavy-hex rows", min=1),
    cols: int = Option(3, "--cols", help="Heavy-hex columns", min=1),
    swap_layers: int = Option(3, "--swap-layers", help="Heavy-hex SWAP layers", min=0),
    sum_duplicates: bool = Option(False, "--sum-duplicates", help="Sum weights of repeated logical edges"),
    seed: int = Option(7, "--seed", help="Generator seed"),
    k: Optional[int] = Option(None, "--k", help="Subgraph size (default n // 3)", min=0),
    cost_gamma: Optional[float] = Option(None, "--cost-gamma", help="Write the heavy-hex cost layer at this angle"),
    output: Optional[Path] = Option(None, "--output", "-o", help="Instance file path"),
):
    from fourierlcu.commands.graph_gen import graph_gen_command

    graph_gen_command(
        kind,
        n=n,
        degree=degree,
        p=p,
        rows=rows,
        cols=cols,
        swap_layers=swap_layers,
        sum_duplicates=sum_duplicates,
        seed=seed,
        k=k,
        cost_gamma=cost_gamma,
        output=output,
    )


@app.command(name="solve-exact", help=CLIMessages.get_solve_exact_help())
def solve_exact(
    path: Path = Argument(..., help="Instance file"),
    k: Optional[int] = Option(None, "--k", help="Override the k in the file header", min=0),
    mode: SolveMode = Option(SolveMode.FEASIBLE_ONLY, "--mode", help="exhaustive or feasible-only"),
    limit: int = Option(10, "--limit", help="Optimal strings to print", min=1),
    output: Optional[Path] = Option(None, "--output", "-o", help="Write the optimum to this record"),
):
    from fourierlcu.commands.solve_exact import solve_exact_command

    solve_exact_command(path, k=k, mode=mode, limit=limit, output=output)


@app.command(help=CLIMessages.get_optimize_help())
def optimize(
    variant: Variant = Argument(..., help="Circuit variant"),
    objective: Objective = Option(Objective.EXPECTATION, "--objective", help="expectation, cvar or cvar-popt"),
    eta: Optional[float] = Option(None, "--eta", help="CVaR level (default 1/Γ)", min=0.0, max=1.0),
    config: Optional[Path] = Option(None, "--config", "-c", help="Experiment config (YAML)"),
    assignments: Optional[List[str]] = Option(None, "--set", help="Override a config field: dotted.key=value"),
    seed: Optional[int] = Option(None, "--seed", help="Master seed"),
    shots: Optional[int] = Option(None, "--shots", help="Shots per circuit in sampled mode", min=1),
    workers: Optional[int] = Option(None, "--workers", help="Worker threads", min=1),
    evaluator: Optional[EvaluatorKind] = Option(None, "--evaluator", help="exact or sampled"),
    output_dir: Optional[Path] = Option(None, "--output-dir", "-o", help="Output directory"),
):
    from fourierlcu.commands.optimize import optimize_command

    optimize_command(
        variant,
        objective=objective,
        eta=eta,
        config_path=config,
        overrides=_overrides(None, None, seed, shots, workers, evaluator, output_dir, assignments),
    )


def main():
    app()


if __name__ == "__main__":
    main()
