"""Numerical tolerances shared by every diagnostic.

Values are in log units unless stated otherwise.
"""

# algebraic identities only (scaled by the magnitude of the operands)
TOL_EXACT = 1e-12

# growth detection for "bounded" verdicts across truncations n/4, n/2, n
TOL_GROW = 0.1

# below this an increment counts as saturated regardless of the previous one
TOL_SATURATED = 1e-2

# index agreement
TOL_IDX = 5e-3

# Petzsche-style liminf threshold for check_snq
DELTA_SNQ = 0.05

# growth index bisection
GAMMA_TOL = 0.02
GAMMA_MAX_ITER = 16
# a tilt exponent fails once its almost-increasing constant grows by this
# much between n/2 and n; a tilt error of e costs e*log(2) per doubling
GAMMA_GROW_TOL = 1e-3

# indices p < BURN_IN never enter tail statistics
BURN_IN = 16

# logm[p]/log p above this, and still growing, is reported as diverging
DIVERGENCE_CAP = 1e3

DEFAULT_N = 100_000

MORICZ_ABOVE = (1.001, 1.01, 1.05, 1.1)
MORICZ_BELOW = (0.999, 0.99, 0.95, 0.9)
