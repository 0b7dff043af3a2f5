from enum import Enum


class GateKind(str, Enum):
    """Gate kinds understood by the simulator."""

    RZ = "rz"
    RY = "ry"
    RX = "rx"
    RZZ = "rzz"
    CZ = "cz"
    SWAP = "swap"
    H = "h"
    P = "p"
    XY = "xy"
    DIAGONAL = "diagonal"


class Variant(str, Enum):
    """QAOA circuit variants.

    - COHERENT_PENALTY: warm start, full cost operator with the penalty, warm-start mixer.
    - PENALTY_LCU: cost operator without the penalty plus one R_Z branch layer.
    - COHERENT_XY_TROTTER: cost operator plus a Trotterized XY mixer.
    - XY_LCU: cost operator plus one Euler-rotation branch layer.
    - SINGLE_BRANCH_PENALTY / SINGLE_BRANCH_XY: branch angles promoted to free parameters.
    """

    COHERENT_PENALTY = "coherent-penalty"
    PENALTY_LCU = "penalty-lcu"
    COHERENT_XY_TROTTER = "coherent-xy-trotter"
    XY_LCU = "xy-lcu"
    SINGLE_BRANCH_PENALTY = "single-branch-penalty"
    SINGLE_BRANCH_XY = "single-branch-xy"


class Tail(str, Enum):
    LOWER = "lower"
    UPPER = "upper"


class SolveMode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    FEASIBLE_ONLY = "feasible-only"


class EvaluatorKind(str, Enum):
    EXACT = "exact"
    SAMPLED = "sampled"


class ExperimentKind(str, Enum):
    PENALTY = "penalty"
    XY = "xy"


class DecomposeKind(str, Enum):
    DIAGONAL = "diagonal"
    XY = "xy"


class GraphKind(str, Enum):
    REGULAR = "regular"
    ERDOS_RENYI = "erdos-renyi"
    HEAVY_HEX = "heavy-hex"


class Allocation(str, Enum):
    """Shot allocation across LCU branches."""

    PER_SHOT = "per-shot"
    DETERMINISTIC = "deterministic"


class Objective(str, Enum):
    EXPECTATION = "expectation"
    CVAR = "cvar"
    CVAR_POPT = "cvar-popt"
