"""Regular variation of the quotients, almost-increasing tilts, the growth
index gamma and the regularized quotient sequence."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._tails import tail_range, truncations
from .constants import (BURN_IN, GAMMA_GROW_TOL, GAMMA_MAX_ITER, GAMMA_TOL, TOL_EXACT, TOL_GROW,
                        TOL_IDX)
from .indices import DegenerateInputError, ProximateOrderVerdict, omega, proximate_order_verdict
from .seqcore import SeqTable, check_lc

RV_RATIOS = (2, 3)


class RegularizationError(RuntimeError):
    """A regularized table violated one of its postconditions."""


@dataclass
class RatioEstimate:
    ratio: int
    value: float
    liminf: float
    limsup: float
    windows: list[tuple[int, float]]
    converged: bool

    def to_dict(self) -> dict:
        return {
            "ratio": self.ratio,
            "value": self.value,
            "liminf": self.liminf,
            "limsup": self.limsup,
            "windows": [[int(n), float(v)] for n, v in self.windows],
            "converged": self.converged,
        }


@dataclass
class RVReport:
    index_estimates: dict[int, RatioEstimate]
    coherent: bool
    bs_residual: float
    index: float | None
    truncation: int
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "index_estimates": {str(k): v.to_dict() for k, v in self.index_estimates.items()},
            "coherent": self.coherent,
            "bs_residual": self.bs_residual,
            "index": self.index,
            "truncation": self.truncation,
            "notes": list(self.notes),
        }


def _ratio_estimate(t: SeqTable, ell: int) -> RatioEstimate:
    windows = []
    lo = hi = math.nan
    for N in truncations(t.n):
        r = tail_range(N // ell)
        p = np.arange(r.start, r.stop)
        if p.size == 0:
            continue
        vals = (t.logm[ell * p] - t.logm[p]) / math.log(ell)
        lo, hi = float(vals.min()), float(vals.max())
        windows.append((N, 0.5 * (lo + hi)))
    converged = (
        len(windows) >= 2
        and hi - lo < TOL_IDX
        and abs(windows[-1][1] - windows[-2][1]) < TOL_IDX
    )
    return RatioEstimate(ell, 0.5 * (lo + hi), lo, hi, windows, converged)


def rv_test(t: SeqTable) -> RVReport:
    """Estimate lim (log m_{lp} - log m_p)/log l for l = 2 and 3.

    log 2/log 3 is irrational, so agreement of both limits is enough for
    regular variation of the quotients.
    """
    if t.n < 64:
        raise DegenerateInputError(f"rv_test needs n >= 64, got {t.n}")
    notes = []
    lc = check_lc(t).status == "holds"
    est = {ell: _ratio_estimate(t, ell) for ell in RV_RATIOS}
    a, b = est[2], est[3]
    coherent = (lc and a.converged and b.converged
                and abs(a.value - b.value) < TOL_IDX
                and math.isfinite(a.value) and math.isfinite(b.value))
    if not lc:
        notes.append("table is not (lc); ratio estimates reported but not trusted")
    for e in (a, b):
        if not e.converged:
            notes.append(f"ratio {e.ratio}: tail spans [{e.liminf:.6g}, {e.limsup:.6g}]")
    index = 0.5 * (a.value + b.value) if coherent else None
    om = index if index is not None else a.value
    res = bs_residual(t, om) if math.isfinite(om) else math.inf
    note = bs_trend_note(t, om) if math.isfinite(om) else None
    if note:
        notes.append(note)
    return RVReport(est, coherent, res, index, t.n, notes)


def _residual(t: SeqTable, om: float) -> np.ndarray:
    p = np.arange(1, t.n)
    return t.logm[1:] - om * np.log(p)


def bs_residual(t: SeqTable, omega: float) -> float:
    """max over the tail of p |r_p - r_{p-1}| with r_p = log m_p - omega log p.

    Bounded values fit a representation m_p = p^omega C_p exp(sum delta_j/j)
    with delta_j -> 0. A diagnostic only: it measures smoothness of r, not
    whether omega is the right level.
    """
    if not math.isfinite(omega):
        raise ValueError("omega must be finite")
    r = _residual(t, omega)  # r[i] belongs to p = i + 1
    span = tail_range(t.n)
    p = np.arange(max(span.start, 2), span.stop)
    if p.size == 0:
        return 0.0
    return float(np.max(np.abs(r[p - 1] - r[p - 2]) * p))


def bs_trend_note(t: SeqTable, omega: float) -> str | None:
    """Flag a residual that drifts over the tail (a hint that omega is off)."""
    r = _residual(t, omega)
    drift = float(r[-1] - r[t.n // 2 - 1])
    if abs(drift) > TOL_GROW:
        return (f"log m_p - {omega:.6g} log p drifts by {drift:.4g} over the tail; "
                "the residual statistic bounds smoothness only, not the index")
    return None


# ---------------------------------------------------------------------------
# Almost increasing tilts and the growth index
# ---------------------------------------------------------------------------

def _tilted(t: SeqTable, gamma: float, count: int | None = None, start: int = 0) -> np.ndarray:
    count = t.n if count is None else count
    p = np.arange(start, count, dtype=float)
    return t.logm[start:count] - gamma * np.log1p(p)


def _suffix_min(x: np.ndarray) -> np.ndarray:
    return np.minimum.accumulate(x[::-1])[::-1]


def almost_increasing_constant(t: SeqTable, gamma: float, count: int | None = None,
                               start: int = 0) -> float:
    """log of the best M with s_p <= M inf_{l>=p} s_l, s_p = (p+1)^-gamma m_p.

    Evaluated on indices start <= p < count (default: the whole table).
    """
    x = _tilted(t, gamma, count, start)
    return float(np.max(x - _suffix_min(x)))


@dataclass
class GammaEstimate:
    value: float
    pass_fail_curve: list[tuple[float, float, float]]
    bracket: tuple[float, float]
    truncation: int
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "pass_fail_curve": [[g, a, b] for g, a, b in self.pass_fail_curve],
            "bracket": list(self.bracket),
            "truncation": self.truncation,
            "notes": list(self.notes),
        }


def gamma_passes(t: SeqTable, gamma: float) -> tuple[bool, float, float]:
    """Does the almost-increasing constant stay put from n/2 to n?

    Indices below the burn-in are skipped: a deep minimum among the first
    few terms would otherwise hide a slow downward drift in the tail.
    """
    c_full = almost_increasing_constant(t, gamma, start=BURN_IN)
    c_half = almost_increasing_constant(t, gamma, t.n // 2, start=BURN_IN)
    return c_full - c_half < GAMMA_GROW_TOL, c_full, c_half


def gamma_index(t: SeqTable, omega_estimate: float | None = None) -> GammaEstimate:
    """Bisect for the largest gamma whose tilt (p+1)^-gamma m_p stays almost increasing."""
    if check_lc(t).status != "holds":
        raise ValueError("gamma_index needs an (lc) table")
    if omega_estimate is None:
        omega_estimate = omega(t).value
    curve = []
    notes = []
    ok0, c0, h0 = gamma_passes(t, 0.0)
    curve.append((0.0, c0, h0))
    if not ok0:
        raise DegenerateInputError("no tilt passes, not even gamma = 0")
    if not math.isfinite(omega_estimate):
        notes.append("omega diverges; gamma is unbounded on this prefix")
        return GammaEstimate(math.inf, curve, (0.0, math.inf), t.n, notes)
    lo, hi = 0.0, omega_estimate + 1.0
    ok, c, h = gamma_passes(t, hi)
    curve.append((hi, c, h))
    if ok:
        notes.append(f"upper end {hi:.6g} still passes; gamma reported at the search cap")
        return GammaEstimate(hi, curve, (hi, hi), t.n, notes)
    for _ in range(GAMMA_MAX_ITER):
        mid = 0.5 * (lo + hi)
        ok, c, h = gamma_passes(t, mid)
        curve.append((mid, c, h))
        if ok:
            lo = mid
        else:
            hi = mid
    if hi - lo > GAMMA_TOL:
        notes.append(f"bracket width {hi - lo:.3g} above {GAMMA_TOL}")
    return GammaEstimate(0.5 * (lo + hi), curve, (lo, hi), t.n, notes)


def regularize_quotients(t: SeqTable, gamma: float) -> SeqTable:
    """m'_p = (p+1)^gamma inf_{l>=p} (l+1)^-gamma m_l, with postconditions checked.

    (i) |log m'_p - log m_p| is at most the almost-increasing constant;
    (ii) (p+1)^-gamma m'_p is nondecreasing.
    """
    x = _tilted(t, gamma)
    floor = _suffix_min(x)
    tilt = gamma * np.log1p(np.arange(t.n, dtype=float))
    logm2 = tilt + floor
    scale = TOL_EXACT * max(1.0, float(np.max(np.abs(t.logm))), float(np.max(np.abs(tilt))))
    const = float(np.max(x - floor))
    if np.max(np.abs(logm2 - t.logm)) > const + scale:
        raise RegularizationError("regularized quotients moved more than the almost-increasing constant")
    if np.any(np.diff(logm2 - tilt) < -scale):
        raise RegularizationError("tilted regularized quotients are not nondecreasing")
    return SeqTable.from_log_quotients(logm2, f"{t.label} regularized(gamma={gamma:g})")


# ---------------------------------------------------------------------------
# omega = gamma
# ---------------------------------------------------------------------------

@dataclass
class OmegaGammaCheck:
    status: str
    omega: float | None
    gamma: float | None
    difference: float | None
    tolerance: float
    one_sided: bool | None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return dict(self.__dict__, notes=list(self.notes))


def omega_equals_gamma_check(t: SeqTable, verdict: ProximateOrderVerdict | None = None,
                             omega_value: float | None = None,
                             gamma_value: float | None = None) -> OmegaGammaCheck:
    """Compare the omega and gamma estimates, gated on (c) converging."""
    tol = 2 * GAMMA_TOL + TOL_IDX
    verdict = verdict or proximate_order_verdict(t)
    if verdict.c.status != "converging":
        return OmegaGammaCheck("not-applicable", None, None, None, tol, None,
                               [f"(c) is {verdict.c.status} on this prefix"])
    om = omega(t).value if omega_value is None else omega_value
    ga = gamma_index(t, om).value if gamma_value is None else gamma_value
    if not (math.isfinite(om) and math.isfinite(ga)):
        return OmegaGammaCheck("not-applicable", om, ga, None, tol, None,
                               ["omega or gamma is infinite"])
    diff = ga - om
    one_sided = ga <= om + TOL_IDX
    notes = [] if one_sided else [f"gamma exceeds omega by {diff:.4g}"]
    return OmegaGammaCheck("pass" if abs(diff) < tol else "fail", om, ga, diff, tol, one_sided, notes)

