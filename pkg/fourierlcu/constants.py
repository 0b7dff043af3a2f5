"""fourierlcu constants and defaults."""

# Simulator caps
MAX_STATEVECTOR_QUBITS = 16
MAX_DENSITY_QUBITS = 8
DEFAULT_ATOL = 1e-10

# Largest instance evaluated with exact distributions; beyond this runs are shot-sampled
EXACT_EVALUATOR_MAX_QUBITS = 14
DEFAULT_SHOTS = 2**15

# XY-mixer LCU pool
DEFAULT_POOL_SIZE = 10**6
DEFAULT_CIRCUITS = 1000
DEFAULT_GAMMA_SAMPLES = 10**5
HAAR_CHUNK_SIZE = 8192

# Diagonal LCU branches below this magnitude get zero sampling probability
PRUNE_THRESHOLD = 1e-14

# Exhaustive solver limits
MAX_EXHAUSTIVE_QUBITS = 24
MAX_FEASIBLE_STRINGS = 10**8

# QAOA
TROTTER_STEPS = 5
SECONDARY_WEIGHT = 1e-5

# Optimizer defaults
GRID_POINTS_2D = 21
GRID_POINTS_3D = 9
GRID_POINTS_HIGH = 5
REFINE_BUDGET = 500
REFINE_XATOL = 1e-4
SIMPLEX_STEP_FRACTION = 0.05

# Heavy-hex reference preset
HEAVY_HEX_ROWS = 5
HEAVY_HEX_COLS = 3
HEAVY_HEX_SWAP_LAYERS = 3
HEAVY_HEX_REFERENCE_EDGES = 328

# CZ-equivalent cost of two-qubit gates
CZ_COST = {"rzz": 2, "cz": 1, "swap": 3, "xy": 2}

RECORD_TOOL = "fourierlcu"
EDGE_LIST_FORMAT = "fourierlcu-edgelist/1"
