"""Growth indices, the alpha/beta transforms, logarithmic means and the
composite test of whether d_M is a proximate order.

Indices converge like 1/log p, so every tail estimate is reported twice:
the raw running extremum over the tail half, and a Richardson-extrapolated
value that removes the leading 1/log p term. ``value`` fields carry the
extrapolated estimate unless ``extrapolate=False``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._tails import richardson_log, spread_status, tail_range, truncations
from .constants import (BURN_IN, DIVERGENCE_CAP, MORICZ_ABOVE, MORICZ_BELOW, TOL_GROW,
                        TOL_IDX)
from .growthfn import GrowthEvaluator, big_m, evaluation_grid
from .seqcore import SeqTable, check_strongly_regular


class DegenerateInputError(ValueError):
    pass


@dataclass
class IndexEstimate:
    method: str
    value: float
    windows: list[tuple[int, float]]
    converged: bool
    notes: list[str] = field(default_factory=list)
    # raw (unextrapolated) tail liminf/limsup at the full truncation
    bounds: tuple[float, float] | None = None

    @property
    def diverging(self) -> bool:
        return self.value == math.inf

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "value": self.value,
            "windows": [[int(n), float(v)] for n, v in self.windows],
            "converged": self.converged,
            "notes": list(self.notes),
            "bounds": None if self.bounds is None else [float(b) for b in self.bounds],
        }


def _tail_p(count: int) -> np.ndarray:
    r = tail_range(count)
    return np.arange(r.start, r.stop)


def _secant_slopes(logm: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Richardson extrapolant of log(m_p)/log(p) with nodes p//2 and p."""
    half = p // 2
    with np.errstate(divide="ignore", invalid="ignore"):
        return richardson_log(logm[p] / np.log(p), np.log(p), logm[half] / np.log(half), np.log(half))


def _anchored_slopes(logm: np.ndarray, p: np.ndarray) -> np.ndarray:
    """(log m_p - log m_B)/log(p/B) with B the burn-in: same limit as
    log(m_p)/log(p), but unchanged when every quotient is scaled by c."""
    return (logm[p] - logm[BURN_IN]) / np.log(p / BURN_IN)


def _smooth_enough(t: SeqTable) -> bool:
    """Richardson only helps when the local log-log slopes settle down.

    If they keep oscillating (block-structured quotients, say) the secant
    liminf tracks the smallest local slope rather than the index.
    """
    e = _secant_slopes(t.logm, _tail_p(t.n))
    return bool(np.all(np.isfinite(e)) and e.max() - e.min() < TOL_GROW)


def _converged(windows) -> bool:
    a, b = windows[-2][1], windows[-1][1]
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(b - a) < TOL_IDX


def _check_nondegenerate(t: SeqTable) -> None:
    if t.n <= 2 * BURN_IN:
        raise DegenerateInputError(f"truncation {t.n} leaves no tail past the burn-in")
    if np.all(t.logm <= 0):
        raise DegenerateInputError("all quotients are <= 1")


def lambda_exponent(t: SeqTable, extrapolate: bool = True) -> IndexEstimate:
    """Exponent of convergence of the quotients, limsup log p / log m_p."""
    _check_nondegenerate(t)
    notes = []
    mode = "raw"
    if extrapolate:
        mode = "richardson" if _smooth_enough(t) else "anchored"
    if mode == "anchored":
        notes.append("local log-log slopes oscillate over the tail; "
                     "slope from the burn-in index reported instead of the extrapolation")
    windows = []
    for N in truncations(t.n):
        p = _tail_p(N)
        if p.size == 0:
            continue
        if np.any(t.logm[p] <= 0):
            windows.append((N, math.inf))
            continue
        if mode != "raw":
            e = _secant_slopes(t.logm, p) if mode == "richardson" else _anchored_slopes(t.logm, p)
            val = math.inf if np.any(e <= 0) else float(np.max(1.0 / e))
        else:
            val = float(np.max(np.log(p) / t.logm[p]))
        windows.append((N, val))
    p = _tail_p(t.n)
    bounds = None
    if np.all(t.logm[p] > 0):
        r = np.log(p) / t.logm[p]
        bounds = (float(r.min()), float(r.max()))
    else:
        notes.append("quotients not yet > 1 in the tail; lambda = +inf by convention")
    value = windows[-1][1]
    return IndexEstimate("lambda:limsup log p/log m_p" + ("" if mode == "raw" else f":{mode}"),
                         value, windows, _converged(windows), notes, bounds)


def omega(t: SeqTable, extrapolate: bool = True) -> IndexEstimate:
    """Order of quasianalyticity, liminf log m_p / log p."""
    _check_nondegenerate(t)
    notes = []
    mode = "raw"
    if extrapolate:
        mode = "richardson" if _smooth_enough(t) else "anchored"
    if mode == "anchored":
        notes.append("local log-log slopes oscillate over the tail; "
                     "slope from the burn-in index reported instead of the extrapolation")
    raw_lo = []
    windows = []
    for N in truncations(t.n):
        p = _tail_p(N)
        if p.size == 0:
            continue
        v = t.logm[p] / np.log(p)
        raw_lo.append(float(v.min()))
        if mode == "raw":
            windows.append((N, raw_lo[-1]))
        else:
            e = _secant_slopes(t.logm, p) if mode == "richardson" else _anchored_slopes(t.logm, p)
            windows.append((N, float(e.min())))
    p = _tail_p(t.n)
    v = t.logm[p] / np.log(p)
    bounds = (float(v.min()), float(v.max()))

    if raw_lo[-1] > DIVERGENCE_CAP and all(a < b for a, b in zip(raw_lo, raw_lo[1:])):
        notes.append(f"log m_p/log p exceeds {DIVERGENCE_CAP:g} and keeps growing: omega diverges")
        windows = [(N, math.inf) for N, _ in windows]
        return IndexEstimate("omega:liminf log m_p/log p", math.inf, windows, True, notes, bounds)

    value = windows[-1][1]
    lam = lambda_exponent(t, mode != "raw")
    if lam.value > 0 and not math.isinf(lam.value):
        inv = 1.0 / lam.value
        if abs(inv - value) > TOL_IDX:
            notes.append(f"1/lambda = {inv:.6g} disagrees with omega; the plain limit of "
                         "log m_p/log p is unlikely to exist on this prefix")
    if bounds[1] - bounds[0] >= TOL_IDX:
        notes.append(f"raw tail of log m_p/log p spans [{bounds[0]:.6g}, {bounds[1]:.6g}]")
    return IndexEstimate("omega:liminf log m_p/log p" + ("" if mode == "raw" else f":{mode}"),
                         value, windows, _converged(windows), notes, bounds)


# ---------------------------------------------------------------------------
# alpha / beta
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AlphaBeta:
    """alpha_p = log m_p and beta_p = log(m_p / M_p^(1/p)), beta_0 = alpha_0."""

    alpha: np.ndarray
    beta: np.ndarray

    def reconstruct_alpha(self) -> np.ndarray:
        """alpha_p = sum_{k<p} beta_k/(k+1) + beta_p."""
        k = np.arange(self.beta.size)
        acc = np.concatenate(([0.0], np.cumsum(self.beta / (k + 1))[:-1]))
        return acc + self.beta


def alpha_beta(t: SeqTable) -> AlphaBeta:
    if t.n < 2:
        raise ValueError("alpha_beta needs at least two quotients")
    alpha = np.array(t.logm)
    beta = np.empty(t.n)
    beta[0] = alpha[0]
    p = np.arange(1, t.n)
    beta[1:] = alpha[1:] - t.logM[1: t.n] / p
    return AlphaBeta(alpha, beta)


# ---------------------------------------------------------------------------
# Logarithmic means and Tauberian diagnostics
# ---------------------------------------------------------------------------

def _harmonic_prefix(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """H[k] = sum_{j<=k} 1/j and S[k] = sum_{j<=k} s_j/j with H[0] = S[0] = 0."""
    k = np.arange(1, s.size + 1, dtype=float)
    H = np.concatenate(([0.0], np.cumsum(1.0 / k)))
    S = np.concatenate(([0.0], np.cumsum(s / k)))
    return H, S


def riesz_mean(s, extrapolate: bool = True) -> IndexEstimate:
    """(L,1) mean (1/H_p) sum_{k<=p} s_k/k of s = (s_1, s_2, ...).

    The raw means approach their limit like 1/H_p. The extrapolated value
    removes that term using the nodes p and floor(sqrt(p)), which reduces
    to the logarithmic average of s over (sqrt(p), p].
    """
    s = np.asarray(s, dtype=float)
    if s.size < 16:
        raise ValueError("riesz_mean needs at least 16 terms")
    H, S = _harmonic_prefix(s)
    raw = []
    windows = []
    for N in truncations(s.size):
        raw.append((N, float(S[N] / H[N])))
        q = max(1, math.isqrt(N))
        val = (S[N] - S[q]) / (H[N] - H[q]) if extrapolate else S[N] / H[N]
        windows.append((N, float(val)))
    notes = ["raw (L,1) means at n/4, n/2, n: " + ", ".join(f"{v:.6g}" for _, v in raw)]
    return IndexEstimate("riesz(L,1)" + (":richardson" if extrapolate else ""),
                         windows[-1][1], windows, _converged(windows), notes,
                         (raw[-1][1], raw[-1][1]))


@dataclass
class MoriczScan:
    normalization: str
    above: dict[float, float]
    below: dict[float, float]
    max_above: float
    max_below: float
    satisfied: bool
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "method": f"moricz:{self.normalization}",
            "above": [[lam, v] for lam, v in self.above.items()],
            "below": [[lam, v] for lam, v in self.below.items()],
            "max_above": self.max_above,
            "max_below": self.max_below,
            "satisfied": self.satisfied,
            "notes": list(self.notes),
        }


def moricz_scan(s, above=MORICZ_ABOVE, below=MORICZ_BELOW, normalization: str = "log") -> MoriczScan:
    """Tail-liminf of the two double averages of Moricz's Tauberian conditions.

    For lam > 1 the inner average is sum_{k=p+1}^{q} (s_k - s_p)/k with
    q = floor(p^lam); for lam < 1 it is sum_{k=q+1}^{p} (s_p - s_k)/k.
    ``normalization="log"`` divides by |H_q - H_p|, the total weight of the
    window. ``"count"`` divides by |q - p| H_p instead; that average tends
    to 0 for every bounded sequence, so it cannot separate convergent from
    oscillating input.
    """
    s = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(s)):
        raise ValueError("moricz_scan needs a bounded finite sequence")
    if not above or not below:
        raise ValueError("lambda grid must have points on both sides of 1")
    if normalization not in ("log", "count"):
        raise ValueError(f"unknown normalization {normalization!r}")
    L = s.size
    H, S = _harmonic_prefix(s)
    notes = []

    def scan(lam):
        if lam > 1:
            pmax = int(math.floor(L ** (1.0 / lam)))
            while pmax > 1 and math.floor(pmax ** lam) > L:
                pmax -= 1
            p = np.arange(max(BURN_IN, pmax // 2), pmax + 1)
        else:
            p = np.arange(max(BURN_IN, L // 2), L + 1)
        q = np.floor(p.astype(float) ** lam).astype(np.int64)
        keep = q != p
        p, q = p[keep], q[keep]
        if p.size == 0:
            return None
        sp = s[p - 1]
        lo, hi = np.minimum(p, q), np.maximum(p, q)
        weight = H[hi] - H[lo]
        total = S[hi] - S[lo]
        inner = total - sp * weight if lam > 1 else sp * weight - total
        denom = weight if normalization == "log" else np.abs(q - p) * H[p]
        return float(np.min(inner / denom))

    res_above, res_below = {}, {}
    for grid, out in ((above, res_above), (below, res_below)):
        for lam in grid:
            if lam == 1 or lam <= 0:
                raise ValueError(f"invalid lambda {lam}")
            v = scan(lam)
            if v is None:
                notes.append(f"lambda={lam}: floor(p^lambda) == p for every usable p; skipped")
            else:
                out[float(lam)] = v
    max_above = max(res_above.values(), default=-math.inf)
    max_below = max(res_below.values(), default=-math.inf)
    ok = max_above >= -TOL_IDX and max_below >= -TOL_IDX
    return MoriczScan(normalization, res_above, res_below, max_above, max_below, ok, notes)


# ---------------------------------------------------------------------------
# Composite verdict
# ---------------------------------------------------------------------------

@dataclass
class LimitCheck:
    """Tail behaviour of one of the equivalent conditions (b), (c), (d)."""

    quantity: str
    status: str
    value: float
    omega: float
    liminf: float
    limsup: float
    raw_liminf: float
    raw_limsup: float
    truncation: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _limit_check(quantity, extrap, raw, n, to_omega) -> LimitCheck:
    extrap = extrap[np.isfinite(extrap)]
    lo, hi = (float(extrap.min()), float(extrap.max())) if extrap.size else (math.nan, math.nan)
    status = spread_status(lo, hi) if extrap.size else "inconclusive"
    value = 0.5 * (lo + hi)
    return LimitCheck(quantity, status, value, to_omega(value), lo, hi,
                      float(raw.min()), float(raw.max()), n)


def flat_condition_clusters(t: SeqTable, gap: float = TOL_GROW, max_report: int = 16) -> dict:
    """Cluster values of p log(m_{p+1}/m_p) over the tail half.

    The limit exists on the prefix when the tail values form one cluster.
    """
    p = _tail_p(t.n - 1)
    vals = np.sort(p * (t.logm[p + 1] - t.logm[p]))
    breaks = np.flatnonzero(np.diff(vals) > gap) + 1
    groups = np.split(vals, breaks)
    centers = [float(np.median(g)) for g in groups]
    return {
        "clusters": centers[:max_report],
        "n_clusters": len(groups),
        "exists": len(groups) == 1,
        "truncation": t.n,
    }


def _b_check(t: SeqTable, ev: GrowthEvaluator) -> LimitCheck:
    hull = ev.hull
    p = _tail_p(t.n)
    lo_x = float(hull.logm[p[0]])
    grid = evaluation_grid(ev, log_t_min=lo_x)
    mg = np.asarray(big_m(ev, grid))
    raw = np.log(mg) / grid
    half = p // 2
    x_hi, x_lo = hull.logm[p], hull.logm[half]
    ok = (x_hi > x_lo) & (x_lo > 0) & (ev.mq[half] > 0)
    p, half, x_hi, x_lo = p[ok], half[ok], x_hi[ok], x_lo[ok]
    extrap = (np.log(ev.mq[p]) - np.log(ev.mq[half])) / (x_hi - x_lo)
    return _limit_check("d_M(t) -> 1/omega", extrap, raw, t.n,
                        lambda v: 1.0 / v if v > 0 else math.inf)


def _c_check(t: SeqTable) -> LimitCheck:
    p = _tail_p(t.n)
    return _limit_check("log m_p/log p -> omega", _secant_slopes(t.logm, p),
                        t.logm[p] / np.log(p), t.n, float)


def _d_check(t: SeqTable, ab: AlphaBeta) -> LimitCheck:
    p = _tail_p(t.n)
    half = p // 2
    beta = ab.beta
    extrap = richardson_log(beta[p], np.log(p), beta[half], np.log(half))
    return _limit_check("beta_p -> omega", extrap, beta[p], t.n, float)


@dataclass
class ProximateOrderVerdict:
    status: str
    strongly_regular: str
    b: LimitCheck
    c: LimitCheck
    d: LimitCheck
    agreement: bool
    flat_condition: dict
    truncation: int
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "strongly_regular": self.strongly_regular,
            "b": self.b.to_dict(),
            "c": self.c.to_dict(),
            "d": self.d.to_dict(),
            "agreement": self.agreement,
            "flat_condition": dict(self.flat_condition),
            "truncation": self.truncation,
            "notes": list(self.notes),
        }


def proximate_order_verdict(t: SeqTable, ev: GrowthEvaluator | None = None) -> ProximateOrderVerdict:
    """Test the three limit conditions equivalent to d_M being a proximate order.

    (b) d_M(t) -> 1/omega, (c) log m_p/log p -> omega, (d) beta_p -> omega.
    Only meaningful for strongly regular sequences; otherwise the status is
    ``not-applicable`` and the sub-checks are reported for information.
    """
    ev = ev or GrowthEvaluator.build(t)
    sr = check_strongly_regular(t)
    with np.errstate(all="ignore"):
        b = _b_check(t, ev)
        c = _c_check(t)
        d = _d_check(t, alpha_beta(t))
    subs = (b, c, d)
    omegas = [x.omega for x in subs]
    agreement = all(x.status == "converging" for x in subs) and \
        max(omegas) - min(omegas) < 2 * TOL_IDX
    notes = []
    if sr.status == "fails":
        status = "not-applicable"
        notes.append("sequence is not strongly regular on this prefix")
    elif any(x.status == "diverging" for x in subs):
        status = "not-a-proximate-order"
        notes += [f"({k}) does not converge on this prefix" for k, x in zip("bcd", subs)
                  if x.status == "diverging"]
    elif agreement:
        status = "proximate-order"
    else:
        status = "inconclusive"
    if c.raw_limsup - c.raw_liminf >= TOL_IDX:
        notes.append("raw log m_p/log p still spread over the tail window; this is a "
                     "property of the prefix, not of the limit")
    return ProximateOrderVerdict(status, sr.status, b, c, d, agreement,
                                 flat_condition_clusters(t), t.n, notes)
