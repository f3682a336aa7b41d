"""Central table of defaults.

Every grid size, path count, tolerance and search knob used by the runners
comes from here. Values that operators may want to change without touching a
configuration file are read from the environment.
"""
import math
import os

# Parallelism cap for sweep points and path chunks
LAB_THREADS = max(1, int(os.getenv("LAB_THREADS", 1)))
# Paths per RNG chunk; sample values never depend on the worker count
CHUNK_SIZE = max(1, int(os.getenv("LAB_CHUNK_SIZE", 4096)))
SHOW_PROGRESS = bool(int(os.getenv("LAB_PROGRESS", 1)))
LOG_LEVEL = os.getenv("LAB_LOG_LEVEL", "WARNING")

# Monte Carlo
DEFAULT_PATHS = 100_000
SE_BAND = 3.0
DRIFT_SE_BAND = 4.0

# Burkholder functions
FD_STEP = 1e-4
FD_TOLERANCE = 1e-6
MAJORIZATION_TOLERANCE = 1e-9
DIAGONAL_TOLERANCE = 1e-12
HOMOGENEITY_RTOL = 1e-9
KINK_RATIO = 0.05
KINK_MIN_SCALE = 0.1
SUP_U_MAX_DEPTH = 6
SUP_U_MAX_BRANCHING = 4
SUP_U_EXHAUSTIVE_DEPTH = 2
SUP_U_BUDGET = 200_000
SUP_U_BEAM = 12

# Discrete martingales
ADVERSARIAL_EXACT_PATH_CAP = 2**14
ADVERSARIAL_BUDGET = 10_000

# Jump processes
TIME_DIVISIONS = 512
QUADRATURE_TOLERANCE = 1e-3
SYMBOL_LIMIT_TOLERANCE = 1e-8

# Fourier multipliers
GRID_HALF_PERIOD = 16 * math.pi
GRID_POINTS = {1: 256, 2: 128}
OPNORM_RESTARTS = 8
OPNORM_ITERATIONS_PER_RESTART = 200
OPNORM_DAMPING = 0.5
OPNORM_STAGNATION_TOL = 1e-10
OPNORM_SLACK = 0.02
ADMISSIBILITY_SAMPLES = 10_000
ADMISSIBILITY_TOLERANCE = 1e-12

# Brownian integrals
WIENER_TIME_STEPS = 64
