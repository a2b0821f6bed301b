"""Tail windows, stabilization rules and limit extrapolation helpers."""
from __future__ import annotations

import numpy as np

from .constants import BURN_IN, TOL_GROW, TOL_IDX, TOL_SATURATED


def truncations(n: int) -> tuple[int, int, int]:
    return (n // 4, n // 2, n)


def tail_range(count: int, burn: int = BURN_IN) -> range:
    """Last half of ``range(count)``, never reaching below the burn-in."""
    return range(max(burn, count // 2), count)


def classify_bounded(s_quarter: float, s_half: float, s_full: float) -> str:
    """Three-valued verdict on whether a running statistic stays bounded.

    ``fails`` needs growth above TOL_GROW at both doublings. ``holds`` needs
    the last increment below TOL_GROW and either saturated or clearly
    decaying; a statistic still creeping up at a steady rate (log log
    growth, say) is left inconclusive.
    """
    d1 = s_half - s_quarter
    d2 = s_full - s_half
    if d1 > TOL_GROW and d2 > TOL_GROW:
        return "fails"
    if abs(d2) < TOL_GROW and (abs(d2) < TOL_SATURATED or abs(d2) <= 0.75 * abs(d1)):
        return "holds"
    return "inconclusive"


def spread_status(lo: float, hi: float) -> str:
    """Convergence of a tail given its liminf/limsup estimates."""
    if not (np.isfinite(lo) and np.isfinite(hi)):
        return "diverging"
    width = hi - lo
    if width < TOL_IDX:
        return "converging"
    if width >= TOL_GROW:
        return "diverging"
    return "inconclusive"


def richardson_log(f_hi, x_hi, f_lo, x_lo):
    """Eliminate a B/x term from f(x) = A + B/x + o(1/x) using two nodes.

    For ``f = log(m_p)/log(p)`` with ``x = log(p)`` this is the log-log
    secant slope between the two nodes.
    """
    f_hi, x_hi, f_lo, x_lo = map(np.asarray, (f_hi, x_hi, f_lo, x_lo))
    return (f_hi * x_hi - f_lo * x_lo) / (x_hi - x_lo)
