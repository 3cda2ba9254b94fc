"""Central table of numerical tolerances.

Every bound comparison and geometric membership test in the package reads its
tolerance from here, so that acceptance runs are reproducible and the slack
convention is stated exactly once.
"""

# Geometric membership: absolute distance to a region of the complex plane.
TOL_GEO = 1e-9

# Bound-check slack: empirical <= bound * (1 + REL_SLACK) + ABS_SLACK.
REL_SLACK = 1e-8
ABS_SLACK = 1e-10

# Operators produced by the ensembles must satisfy op_norm <= 1 + CONTRACTION_TOL.
CONTRACTION_TOL = 1e-10

# Inputs to routines that require a contraction may exceed norm 1 by this much.
CONTRACTION_INPUT_TOL = 1e-9

# Hermitian check: ||H - H*|| <= HERMITIAN_TOL * ||H||.
HERMITIAN_TOL = 1e-10

# Matrix inversion refuses condition numbers above this.
MAX_CONDITION = 1e14

# Matrix exponential refuses spectral norms above this.
MAX_EXPM_NORM = 1e6

# Poisson series are truncated once the omitted probability mass is below this.
POISSON_MASS_TOL = 1e-14

# Contour quadrature refinement target and node budget.
CONTOUR_QUAD_TOL = 1e-8
CONTOUR_NODE_CAP = 200_000

# Bisection tolerance for the smallest certified semi-angle.
SEMI_ANGLE_TOL = 1e-6


def passes(empirical: float, bound: float) -> bool:
    """Single slack convention for every empirical-vs-bound comparison."""
    return empirical <= bound * (1.0 + REL_SLACK) + ABS_SLACK
