from pathlib import Path
from typing import Optional, Sequence

from loguru import logger
from rich.console import Console

from fourierlcu.commands.middleware import handle_errors
from fourierlcu.core.estimators import value_histogram
from fourierlcu.core.experiments import (
    PENALTY_MODES,
    XY_MODES,
    ModeResult,
    SuiteResult,
    instance_from_config,
    resolve_evaluator,
    run_experiment_suite,
)
from fourierlcu.core.problems.dks import DksInstance
from fourierlcu.core.problems.io import write_instance
from fourierlcu.core.problems.solver import solve_instance
from fourierlcu.core.qaoa import QaoaSpec, build_variant_circuit
from fourierlcu.core.sim.circuit import cz_count, to_gate_list
from fourierlcu.libs.settings import libs_settings
from fourierlcu.libs.utils.enums import EvaluatorKind, ExperimentKind, Variant
from fourierlcu.types import ExperimentConfig
from fourierlcu.utils.console_messages import RunMessages
from fourierlcu.utils.experiment_config import config_hash, load_config
from fourierlcu.utils.records import RecordMeta, write_csv, write_record, write_text

console = Console()

# LCU modes have no single circuit; their branches are exported by `decompose`
EXPORTED_VARIANTS = {
    Variant.COHERENT_PENALTY,
    Variant.COHERENT_XY_TROTTER,
    Variant.SINGLE_BRANCH_PENALTY,
    Variant.SINGLE_BRANCH_XY,
}


def flag_overrides(
    experiment: Optional[ExperimentKind] = None,
    modes: Optional[Sequence[int]] = None,
    seed: Optional[int] = None,
    shots: Optional[int] = None,
    workers: Optional[int] = None,
    evaluator: Optional[EvaluatorKind] = None,
    output_dir: Optional[Path] = None,
) -> list[str]:
    """Dedicated command-line flags as ``key=value`` overrides."""
    out = []
    if experiment is not None:
        out.append(f"experiment={experiment.value}")
    if modes:
        out.append(f"modes=[{', '.join(str(m) for m in modes)}]")
    if seed is not None:
        out.append(f"seed={seed}")
    if shots is not None:
        out.append(f"shots={shots}")
    if workers is not None:
        out.append(f"workers={workers}")
    if evaluator is not None:
        out.append(f"evaluator={evaluator.value}")
    if output_dir is not None:
        out.append(f"output_dir={output_dir}")
    return out


def run_directory(config: ExperimentConfig, digest: str) -> Path:
    base = config.output_dir if config.output_dir is not None else libs_settings.output_dir
    return Path(base) / f"{config.experiment.value}-{digest[:12]}"


def mode_record(result: ModeResult) -> dict:
    return {
        "mode": result.mode,
        "variant": result.variant.value,
        "params": result.params,
        "report": result.report.model_dump(),
        "extras": result.extras,
    }


def write_histogram(path: Path, result: ModeResult, instance: DksInstance, digest: str) -> Path:
    gamma = result.gamma_cost if result.reference is not None else None
    rows = value_histogram(result.distribution, instance, reference=result.reference, gamma=gamma)
    return write_csv(
        path,
        "value-histogram",
        ["value", "feasible", "mass", "reference_over_gamma"],
        [(r.value, int(r.feasible), r.mass, r.reference) for r in rows],
        config_hash=digest,
    )


def write_trace(path: Path, result: ModeResult, digest: str) -> Path:
    trace = result.trace
    extra_keys = sorted({key for entry in trace.entries for key in entry.extras})
    header = list(trace.names) + ["value", "best_sample"] + extra_keys
    rows = [
        [entry.params[name] for name in trace.names]
        + [entry.value, entry.best_sample]
        + [entry.extras.get(key) for key in extra_keys]
        for entry in trace.entries
    ]
    return write_csv(path, "optimizer-trace", header, rows, config_hash=digest)


def write_circuit(path: Path, result: ModeResult, instance: DksInstance, trotter_steps: int, digest: str) -> Path:
    spec = QaoaSpec(instance, result.variant, result.params, trotter_steps=trotter_steps)
    circuit = build_variant_circuit(spec)
    logger.debug(f"mode {result.mode}: {len(circuit)} gates, {cz_count(circuit)} CZ-equivalent")
    return write_text(path, "gate-list", to_gate_list(circuit), config_hash=digest)


def write_suite_outputs(suite: SuiteResult, config: ExperimentConfig, digest: str, directory: Path) -> list[Path]:
    """Report record, instance file, and per-mode histogram, trace and circuit files."""
    written = [
        write_instance(
            directory / "instance.txt",
            suite.instance,
            comment=RecordMeta(schema="instance", config_hash=digest).to_comment(),
        )
    ]
    body = {
        "experiment": suite.kind.value,
        "config": config.model_dump(mode="json"),
        "instance": {
            "n": suite.instance.n,
            "k": suite.instance.k,
            "lambda": suite.instance.lam,
            "edges": suite.instance.graph.num_edges,
        },
        "optimum": suite.optimum,
        "evaluator": suite.evaluator.value,
        "trotter_pair_order": "lexicographic",
        "modes": [mode_record(result) for result in suite.modes.values()],
    }
    written.append(write_record(directory / "report.yaml", "experiment-report", body, config_hash=digest))
    for mode, result in suite.modes.items():
        written.append(write_histogram(directory / f"mode-{mode}-histogram.csv", result, suite.instance, digest))
        if result.trace is not None:
            written.append(write_trace(directory / f"mode-{mode}-trace.csv", result, digest))
        if result.variant in EXPORTED_VARIANTS:
            written.append(
                write_circuit(
                    directory / f"mode-{mode}-circuit.txt", result, suite.instance, config.trotter_steps, digest
                )
            )
    return written


@handle_errors
def run_command(config_path: Optional[Path] = None, overrides: Sequence[str] = ()) -> SuiteResult:
    """Run the configured experiment suite and write its outputs."""
    config = load_config(config_path, overrides)
    digest = config_hash(config)
    instance = instance_from_config(config.instance)
    evaluator = resolve_evaluator(instance.n, config.evaluator)
    modes = config.modes or (PENALTY_MODES if config.experiment == ExperimentKind.PENALTY else XY_MODES)
    RunMessages.starting(config.experiment.value, instance.n, instance.k, modes, evaluator.value, digest)

    solution = solve_instance(instance)
    RunMessages.optimum(solution.value, len(solution.solutions))
    suite = run_experiment_suite(config.experiment, instance, config, optimum=solution.value)

    console.print(RunMessages.create_results_table(f"{config.experiment.value} modes", suite.modes.values()))
    directory = run_directory(config, digest)
    written = write_suite_outputs(suite, config, digest, directory)
    RunMessages.outputs_written(directory, len(written))
    return suite
