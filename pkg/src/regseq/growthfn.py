"""Associated function M(t), counting function nu(t) and d_M(t) = log M(t)/log t.

Every entry point takes ``log_t`` rather than t, and accepts scalars or
numpy arrays. The evaluable range ends at the last materialized quotient.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .seqcore import SeqTable, check_lc, log_convex_minorant


class OutOfRangeError(ValueError):
    """log t lies beyond the last quotient of the prefix."""


class DomainError(ValueError):
    """d_M is undefined at this t (t <= 1 or M(t) <= 0)."""


@dataclass(frozen=True, eq=False)
class GrowthEvaluator:
    """Precomputed state for evaluating M, nu and d_M on one table.

    For a table that is not (lc) the associated function only sees the
    log-convex minorant, so M is evaluated on ``hull``; ``nu`` still counts
    the raw quotients.
    """

    table: SeqTable
    hull: SeqTable
    lc: bool
    # M at each quotient abscissa: mq[p] = p*logm[p] - logM[p], summed stably
    mq: np.ndarray

    @classmethod
    def build(cls, table: SeqTable) -> GrowthEvaluator:
        lc = check_lc(table).status == "holds"
        hull = table if lc else log_convex_minorant(table)
        hm = np.maximum.accumulate(hull.logm)  # clears sub-ulp hull noise
        steps = np.zeros(hull.n)
        steps[1:] = np.arange(1, hull.n) * (hm[1:] - hm[:-1])
        mq = np.cumsum(steps)
        mq.flags.writeable = False
        return cls(table, hull, lc, mq)

    @property
    def log_floor(self) -> float:
        """log of max(1, m_0): d_M is only evaluated above this."""
        return max(0.0, float(self.table.logm[0]))

    @property
    def log_t_max(self) -> float:
        return float(np.max(self.table.logm))

    def _check_range(self, log_t) -> None:
        if np.any(np.asarray(log_t) > self.log_t_max):
            raise OutOfRangeError(
                f"log t exceeds the last quotient; maximum evaluable log t is {self.log_t_max!r}")


def _scalar(x):
    return x.item() if isinstance(x, np.ndarray) and x.ndim == 0 else x


def nu(ev: GrowthEvaluator, log_t):
    """nu(t) = #{j < n : m_j <= t}."""
    ev._check_range(log_t)
    x = np.asarray(log_t, dtype=float)
    if ev.lc:
        out = np.searchsorted(ev.table.logm, x, side="right")
    else:
        out = (ev.table.logm[None, :] <= x.reshape(-1, 1)).sum(axis=1).reshape(x.shape)
    return _scalar(out.astype(np.int64))


def _hull_nu(ev: GrowthEvaluator, x: np.ndarray) -> np.ndarray:
    return np.searchsorted(ev.hull.logm, x, side="right")


def big_m(ev: GrowthEvaluator, log_t):
    """M(t) = sup_p (p log t - log M_p), via the piecewise form.

    On [m_{p-1}, m_p) this is p log t - log M_p, written as
    M(m_{p-1}) + p (log t - log m_{p-1}) to avoid cancellation.
    """
    ev._check_range(log_t)
    x = np.asarray(log_t, dtype=float)
    p = _hull_nu(ev, x)
    safe = np.maximum(p - 1, 0)
    val = np.where(p > 0, ev.mq[safe] + p * (x - ev.hull.logm[safe]), 0.0)
    return _scalar(val)


def big_m_integral(ev: GrowthEvaluator, log_t):
    """int_0^t nu(r)/r dr in closed form: sum over m_j <= t of (log t - log m_j).

    Counts raw quotients, so it matches big_m only on (lc) tables.
    """
    ev._check_range(log_t)
    x = np.asarray(log_t, dtype=float)
    k = np.asarray(nu(ev, x))
    t = ev.table
    if ev.lc:
        val = k * x - t.logM[k]
    else:
        val = np.maximum(x.reshape(-1, 1) - t.logm[None, :], 0.0).sum(axis=1).reshape(x.shape)
    return _scalar(val)


def big_m_sup(table: SeqTable, log_t):
    """Brute-force sup over p <= n of p log t - log M_p."""
    x = np.asarray(log_t, dtype=float)
    p = np.arange(table.n + 1)
    val = (p[None, :] * x.reshape(-1, 1) - table.logM[None, :]).max(axis=1)
    return _scalar(np.maximum(val, 0.0).reshape(x.shape))


def d_m(ev: GrowthEvaluator, log_t):
    x = np.asarray(log_t, dtype=float)
    if np.any(x <= ev.log_floor) or np.any(x <= 0):
        raise DomainError("d_M needs t > max(1, m_0)")
    m = np.asarray(big_m(ev, x))
    if np.any(m <= 0):
        raise DomainError("d_M needs M(t) > 0")
    return _scalar(np.log(m) / x)


def dm_derivative_proxy(ev: GrowthEvaluator, log_t):
    """nu(t)/M(t) - d_M(t), which equals t log(t) d_M'(t) off the quotients."""
    x = np.asarray(log_t, dtype=float)
    d = np.asarray(d_m(ev, x))
    count = _hull_nu(ev, x)
    return _scalar(count / np.asarray(big_m(ev, x)) - d)


def evaluation_grid(ev: GrowthEvaluator, per_decade: int = 32, log_t_min: float | None = None) -> np.ndarray:
    """Increasing grid of log t where d_M is defined.

    Geometric in t with ``per_decade`` points per factor of 10, merged with
    every quotient abscissa (d_M has its kinks there).
    """
    lo = ev.log_floor if log_t_min is None else max(log_t_min, ev.log_floor)
    hi = ev.log_t_max
    if hi <= lo:
        return np.empty(0)
    count = max(2, int(np.ceil((hi - lo) / np.log(10) * per_decade)) + 1)
    geo = np.linspace(lo, hi, count)
    absc = ev.hull.logm[(ev.hull.logm >= lo) & (ev.hull.logm <= hi)]
    grid = np.unique(np.concatenate([geo, absc]))
    grid = grid[grid > max(lo, 0.0)]
    return grid[np.asarray(big_m(ev, grid)) > 0]


def write_plot_data(ev: GrowthEvaluator, path: str | Path, fixture: str) -> int:
    """Write the (log_t, M, d_M) grid as TSV; returns the number of rows."""
    grid = evaluation_grid(ev)
    m = np.asarray(big_m(ev, grid))
    d = np.log(m) / grid
    lines = [f"# fixture={fixture}\ttruncation={ev.table.n}", "log_t\tM\td_M"]
    lines += [f"{a:.17g}\t{b:.17g}\t{c:.17g}" for a, b, c in zip(grid, m, d)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return grid.size
