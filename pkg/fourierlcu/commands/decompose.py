from pathlib import Path
from typing import Optional

import numpy as np
from loguru import logger
from rich.console import Console

from fourierlcu.commands.middleware import handle_errors
from fourierlcu.core.lcu_diagonal import (
    build_diagonal_lcu,
    hamming_penalty_values,
    hamming_weight_function,
    reconstruct_unitary_error,
)
from fourierlcu.core.su2.pool import build_su2_pool
from fourierlcu.core.su2.xy import mc_reconstruct_xy
from fourierlcu.libs.settings import libs_settings
from fourierlcu.libs.utils.enums import DecomposeKind
from fourierlcu.libs.utils.errors import DecompositionError
from fourierlcu.utils.console_messages import DecomposeMessages
from fourierlcu.utils.records import write_record

console = Console()

# Monte-Carlo reconstruction of the XY mixer is printed for small registers only
MC_CHECK_MAX_QUBITS = 4


def decompose_diagonal(n: int, b: int, gamma: float, output: Path) -> dict:
    lcu = build_diagonal_lcu(hamming_penalty_values(n, b), gamma)
    if n <= 12:
        error = reconstruct_unitary_error(lcu, hamming_weight_function, n)
    else:
        levels = np.arange(lcu.m + 1)
        error = float(np.abs(lcu.reconstruct(levels) - lcu.target(levels)).max())
    write_record(output, "diagonal-lcu", {"n": n, "b": b, **lcu.to_record()})
    summary = {
        "gamma_cost": lcu.gamma_cost,
        "bound": float(lcu.m + 1),
        "branches": int(lcu.active_branches.size),
        "reconstruction_error": error,
    }
    rows = [
        ("Γ = ‖c‖₁²", f"{lcu.gamma_cost:.10g}"),
        ("Bound m + 1", str(lcu.m + 1)),
        ("Active branches", str(summary["branches"])),
        ("Reconstruction error", f"{error:.3e}"),
    ]
    console.print(DecomposeMessages.create_summary_table(f"Diagonal LCU (n={n}, b={b}, γ={gamma:g})", rows))
    return summary


def decompose_xy(
    n: int, beta: float, pool_size: int, circuits: int, gamma_samples: int, seed: int, workers: int, output: Path
) -> dict:
    pool, selection = build_su2_pool(n, beta, pool_size, circuits, gamma_samples, seed, workers=workers)
    error = None
    if n <= MC_CHECK_MAX_QUBITS:
        _, error = mc_reconstruct_xy(n, beta, pool_size, seed)
    branches = [
        [g.alpha, g.theta, g.chi, float(phase)] for g, phase in zip(selection.branches, selection.phases)
    ]
    write_record(
        output,
        "xy-lcu",
        {
            "n": n,
            "beta": float(beta),
            "pool_size": pool.size,
            "alpha_hat": pool.alpha_hat,
            "gamma_hat": pool.gamma_hat,
            "gamma_sigma": pool.gamma_sigma,
            "cost_bound": pool.cost_bound(),
            "branches": branches,
        },
    )
    summary = {
        "gamma_cost": pool.gamma_hat,
        "gamma_sigma": pool.gamma_sigma,
        "bound": float(pool.cost_bound()),
        "reconstruction_error": error,
    }
    rows = [
        ("Γ̂ = (mean |a|)²", f"{pool.gamma_hat:.6g} ± {pool.gamma_sigma:.2g}"),
        ("Bound (n+1)(n+2)(n+3)/6", str(pool.cost_bound())),
        ("Pool / circuits", f"{pool.size} / {len(selection)}"),
        ("Reconstruction error", "n/a" if error is None else f"{error:.3e}"),
    ]
    console.print(DecomposeMessages.create_summary_table(f"XY-mixer LCU (n={n}, β={beta:g})", rows))
    return summary


@handle_errors
def decompose_command(
    kind: DecomposeKind,
    n: int,
    b: Optional[int] = None,
    gamma: float = 0.5,
    beta: float = 0.3,
    pool_size: int = 100_000,
    circuits: int = 1000,
    gamma_samples: int = 100_000,
    seed: int = 11,
    workers: int = 1,
    output: Optional[Path] = None,
) -> dict:
    """Decompose and write the coefficients (diagonal) or branch angles (xy)."""
    if n < 1:
        raise DecompositionError(f"Need at least one qubit, got n={n}")
    if output is None:
        output = libs_settings.output_dir / f"{kind.value}-lcu-n{n}.yaml"
    logger.debug(f"decompose {kind.value} n={n} -> {output}")
    if kind == DecomposeKind.DIAGONAL:
        summary = decompose_diagonal(n, n // 3 if b is None else b, gamma, output)
    else:
        if circuits > pool_size:
            raise DecompositionError("circuits cannot exceed the pool size")
        summary = decompose_xy(n, beta, pool_size, circuits, gamma_samples, seed, workers, output)
    DecomposeMessages.written(output)
    return summary
