from pathlib import Path
from typing import Optional, Sequence

from rich.console import Console

from fourierlcu.commands.middleware import handle_errors
from fourierlcu.commands.run import (
    EXPORTED_VARIANTS,
    mode_record,
    run_directory,
    write_circuit,
    write_histogram,
    write_trace,
)
from fourierlcu.core.experiments import ModeResult, instance_from_config, optimize_variant
from fourierlcu.libs.utils.enums import Objective, Variant
from fourierlcu.utils.console_messages import RunMessages
from fourierlcu.utils.experiment_config import config_hash, load_config
from fourierlcu.utils.records import write_record

console = Console()


@handle_errors
def optimize_command(
    variant: Variant,
    objective: Objective = Objective.EXPECTATION,
    eta: Optional[float] = None,
    config_path: Optional[Path] = None,
    overrides: Sequence[str] = (),
) -> ModeResult:
    """Optimize one variant and write its report, histogram, trace and circuit."""
    config = load_config(config_path, overrides)
    digest = config_hash(config)
    instance = instance_from_config(config.instance)
    result = optimize_variant(instance, config, variant, objective=objective, eta=eta)
    console.print(RunMessages.create_results_table(result.report.label, [result]))

    directory = run_directory(config, digest)
    stem = f"optimize-{variant.value}-{objective.value}"
    written = [
        write_record(
            directory / f"{stem}.yaml",
            "optimize-report",
            {"objective": objective.value, "eta": eta, **mode_record(result)},
            config_hash=digest,
        ),
        write_histogram(directory / f"{stem}-histogram.csv", result, instance, digest),
        write_trace(directory / f"{stem}-trace.csv", result, digest),
    ]
    if variant in EXPORTED_VARIANTS:
        written.append(write_circuit(directory / f"{stem}-circuit.txt", result, instance, config.trotter_steps, digest))
    RunMessages.outputs_written(directory, len(written))
    return result
