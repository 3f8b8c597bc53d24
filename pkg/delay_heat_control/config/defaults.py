"""
Default configuration values.

These defaults make a scenario file with only a problem and data section
runnable while remaining overridable from the run section or the CLI.
They are sized for desk-scale runs (a few seconds per scenario).
"""

# Series solution
DEFAULT_MODES = 16
"""Default truncation order N of the sine series."""

DEFAULT_DELTA = 0.5
"""Default decay margin used by the regularity heuristic."""

# Finite-difference oracle
DEFAULT_FD_NX = 200
"""Default number of spatial intervals of the oracle grid."""

DEFAULT_FD_DT = 1e-3
"""Default oracle time step (snapped so tau is a whole number of steps)."""

DEFAULT_FD_SCHEME = "crank-nicolson"
"""
Default time discretization of the current-time terms.

Options:
- "crank-nicolson": second order, used for steering checks
- "implicit-euler": first order, strongly damping
"""

# Output sampling
DEFAULT_SAMPLE_NX = 65
"""Default number of x samples written to solution.csv."""

DEFAULT_SAMPLE_NT = 33
"""Default number of t samples written to solution.csv."""

DEFAULT_OUTPUT_DIR = "dhc-output"
"""Output directory when neither --out, run.output_dir nor DHC_OUT_DIR is set."""

OUTPUT_DIR_ENV_VAR = "DHC_OUT_DIR"
"""Environment variable naming the default output directory."""

# Quadrature
QUAD_EPSABS = 1e-11
"""Absolute tolerance of every adaptive integral."""

QUAD_EPSREL = 1e-10
"""Relative tolerance of every adaptive integral."""

QUAD_MAX_DEPTH = 30
"""Maximum bisection depth of an interval before giving up."""

# Data validation
COMPATIBILITY_SAMPLES = 64
"""Sample points per edge used by the compatibility checks."""

COMPATIBILITY_TOLERANCE = 1e-8
"""Largest accepted corner mismatch between history, boundary and target."""

PROPORTIONALITY_RTOL = 1e-12
"""Relative tolerance of the drift proportionality check."""

# Numerical guards
ZERO_RATE_THRESHOLD = 1e-12
"""Rates below this value divided by tau use the zero-rate limit."""

SINGULAR_MODE_RTOL = 1e-12
"""Relative size of exp_tau(D, T) - 1 below which a mode is singular."""

UNSTABLE_RUN_FACTOR = 1e12
"""Oracle growth factor over the data norm treated as instability."""

DERIVATIVE_STEP = 1e-6
"""Relative central-difference step for boundary-trace derivatives."""

# CLI
DEFAULT_SCENARIO_FILE = "dhc-scenario.yml"
"""Scenario file picked up from the working directory when --config is not given."""
