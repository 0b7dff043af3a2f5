from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from fourierlcu.constants import (
    DEFAULT_CIRCUITS,
    DEFAULT_GAMMA_SAMPLES,
    DEFAULT_POOL_SIZE,
    DEFAULT_SHOTS,
    HEAVY_HEX_COLS,
    HEAVY_HEX_ROWS,
    HEAVY_HEX_SWAP_LAYERS,
    REFINE_BUDGET,
    REFINE_XATOL,
    TROTTER_STEPS,
)
from fourierlcu.libs.utils.enums import Allocation, EvaluatorKind, ExperimentKind, GraphKind


class InstanceConfig(BaseModel):
    """Graph source for a densest-k-subgraph instance."""

    model_config = ConfigDict(extra="forbid")

    kind: GraphKind = GraphKind.REGULAR
    n: int = Field(default=12, ge=1)
    degree: int = Field(default=3, ge=0)
    p: float = Field(default=0.5, ge=0.0, le=1.0)
    rows: int = Field(default=HEAVY_HEX_ROWS, ge=1)
    cols: int = Field(default=HEAVY_HEX_COLS, ge=1)
    swap_layers: int = Field(default=HEAVY_HEX_SWAP_LAYERS, ge=0)
    seed: int = 7
    k: Optional[int] = Field(default=None, ge=0, description="Defaults to floor(n / 3)")
    file: Optional[Path] = Field(default=None, description="Edge-list file; overrides the generator")

    @field_validator("file")
    @classmethod
    def file_exists(cls, value: Optional[Path]) -> Optional[Path]:
        if value is not None and not Path(value).is_file():
            raise ValueError(f"Instance file not found: {value}")
        return value

    def resolved_k(self, n: int) -> int:
        return self.k if self.k is not None else n // 3


class PoolConfig(BaseModel):
    """Haar pool for the XY-mixer LCU."""

    model_config = ConfigDict(extra="forbid")

    pool_size: int = Field(default=DEFAULT_POOL_SIZE, ge=1)
    circuits: int = Field(default=DEFAULT_CIRCUITS, ge=1)
    gamma_samples: int = Field(default=DEFAULT_GAMMA_SAMPLES, ge=2)
    seed: int = 11

    @model_validator(mode="after")
    def circuits_fit_pool(self) -> "PoolConfig":
        if self.circuits > self.pool_size:
            raise ValueError("circuits cannot exceed pool_size")
        return self


class OptimizerConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    grid_points: Optional[int] = Field(default=None, ge=2, description="Per axis; defaults by dimension")
    refine_budget: int = Field(default=REFINE_BUDGET, ge=0)
    xatol: float = Field(default=REFINE_XATOL, gt=0)


class ExperimentConfig(BaseModel):
    """Everything a run depends on; its hash labels every output file."""

    model_config = ConfigDict(extra="forbid")

    experiment: ExperimentKind = ExperimentKind.PENALTY
    modes: Optional[list[int]] = Field(default=None, description="Subset of modes to run; all by default")
    instance: InstanceConfig = Field(default_factory=InstanceConfig)
    evaluator: Optional[EvaluatorKind] = Field(default=None, description="Exact up to 14 qubits unless set")
    shots: int = Field(default=DEFAULT_SHOTS, ge=1)
    allocation: Allocation = Allocation.PER_SHOT
    pool: PoolConfig = Field(default_factory=PoolConfig)
    optimizer: OptimizerConfig = Field(default_factory=OptimizerConfig)
    trotter_steps: int = Field(default=TROTTER_STEPS, ge=1)
    seed: int = 1234
    workers: int = Field(default=1, ge=1)
    output_dir: Optional[Path] = None


class MetricReport(BaseModel):
    """One row of an experiment table."""

    label: str = ""
    expectation: float
    gamma: float = 1.0
    eta: float = 1.0
    cvar_lower: float
    cvar_upper: float
    p_feasible: float
    p_optimal: float
    expectation_given_feasible: Optional[float] = None
    best_feasible: Optional[float] = None

    @model_validator(mode="after")
    def probabilities_ordered(self) -> "MetricReport":
        tol = 1e-9
        if not (-tol <= self.p_optimal <= self.p_feasible + tol <= 1.0 + 2 * tol):
            raise ValueError(
                f"Expected 0 <= p_optimal <= p_feasible <= 1, got {self.p_optimal}, {self.p_feasible}"
            )
        return self
