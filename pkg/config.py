
# ============================================================================
# QCALC CONFIGURATION
# ============================================================================
import os

from dotenv import load_dotenv

# Pick up QCALC_* overrides from a local .env file if one exists
load_dotenv()

# Default q for the CLI: "exact" for symbolic q, or a number in (0, 1)
DEFAULT_QMODE = os.getenv("QCALC_Q", "exact")

# q used by numeric entries when the run itself is exact
DEFAULT_NUMERIC_Q = 0.5

# Total-degree truncation for exact identity checks
DEFAULT_TRUNC = 12

# ============================================================================
# NUMERIC TOLERANCES
# ============================================================================

# Jackson sums stop once the outermost lattice terms fall below this
TAIL_TOL = 1e-15

# Relative agreement required of numeric identity checks
COMPARE_TOL = 1e-10

# Largest one-sided lattice window a Jackson sum may use
MAX_WINDOW = 400

# Product factors closer than this to zero count as a pole of e_q
POLE_GUARD = 1e-8

# Loose tolerance for the q -> 1 limit checks at q = 0.999
LIMIT_TOL = 1e-2

# Step of the central difference in the parameter a of 1phi0
FD_STEP = 1e-5

# Lattice points with |t| below this use the power series of the integrand
SERIES_RADIUS = 0.9

# ============================================================================
# RUNTIME
# ============================================================================

# "parallel" runs identity checks through asyncio.to_thread, "sequential" one by one
EXECUTION_MODE = os.getenv("QCALC_EXECUTION_MODE", "parallel")

LOG_LEVEL = os.getenv("QCALC_LOG_LEVEL", "WARNING")
