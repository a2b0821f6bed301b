"""Independent brute-force references used by the tests."""
from __future__ import annotations

import math

import numpy as np


def log_factorial(p: int) -> float:
    """log p! by direct summation (exact fsum of log k)."""
    return math.fsum(math.log(k) for k in range(2, p + 1))


def gevrey1_beta(p: int) -> float:
    """beta_p for m_p = p + 1: log(p+1) - log(p!)/p, since M_p = p!."""
    return math.log(p + 1) - log_factorial(p) / p


def cumulative_logM(logm) -> list[float]:
    out = [0.0]
    for p in range(1, len(logm) + 1):
        out.append(math.fsum(logm[:p]))
    return out


def big_m_brute(logM: np.ndarray, log_t: float) -> float:
    return max(0.0, max(p * log_t - logM[p] for p in range(len(logM))))


def suffix_constant(x) -> float:
    """max_p (x_p - min_{l>=p} x_l), quadratic reference."""
    n = len(x)
    return max(x[p] - min(x[p:]) for p in range(n))


def riesz_naive(s, p: int) -> float:
    num = math.fsum(s[k - 1] / k for k in range(1, p + 1))
    den = math.fsum(1.0 / k for k in range(1, p + 1))
    return num / den


def random_lc_logm(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random nondecreasing log quotients, i.e. a random (lc) table."""
    steps = rng.exponential(1.0 / n, size=n)
    steps[0] = rng.normal(0.0, 1.0)
    return np.cumsum(steps)
