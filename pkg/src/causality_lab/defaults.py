"""Shared numeric defaults. Every CLI scenario can override these per run;
resolved values are echoed into reports."""

# Null-character tolerance, relative to the Euclidean norm squared of the vector.
EPS_NULL = 1e-9

# Hit radius for point excisions (chart units).
EPS_HIT = 1e-6

# Certificate acceptance radius for two-point null connection (chart units).
TOL_HIT = 1e-6

# Integrator affine step.
STEP = 1e-3

# Finite-difference step for metric derivatives of conformal deformations.
FD_STEP = 1e-5

# Distance classification floor, per backend.
DELTA_D_ANALYTIC = 1e-9
DELTA_D_GRAPH = 1e-3

# Shooting-fan refinement budget (objective evaluations).
REFINE_BUDGET = 200

# Homotopy scan grid and indicator-bisection depth.
GRID_N = 101
REFINE_ITERS = 20

# Winding numbers tried when reducing circle-factor distances.
MAX_WINDING = 3

# Chronology-graph edge horizon (chart units) and default node budget.
GRAPH_HORIZON = 0.5
GRAPH_BUDGET = 4096


def fan_size(m: int) -> int:
    """Default celestial-fan resolution for spatial dimension m."""
    if m <= 1:
        return 2
    if m == 2:
        return 64
    return 256
