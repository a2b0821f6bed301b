"""Sequences in log domain and the (lc), (mg), (snq) property checks.

A sequence M = (M_p) with M_0 = 1 is stored through its quotients
m_p = M_{p+1}/M_p, always as logarithms. M_p itself is never exponentiated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from ._tails import classify_bounded, tail_range, truncations
from .constants import BURN_IN, DELTA_SNQ, TOL_EXACT

STATUS_ORDER = {"fails": 0, "inconclusive": 1, "holds": 2}


class GenerationError(ValueError):
    """A quotient generator produced a non-finite value."""


# ---------------------------------------------------------------------------
# Quotient generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientSpec:
    """Generator of log m_p, p = 0, 1, 2, ...

    Build instances with the classmethods; ``kind`` selects the family.
    """

    kind: str
    alpha: float | None = None
    beta: float | None = None
    q: float | None = None
    low: float | None = None
    high: float | None = None
    values: tuple[float, ...] | None = None
    func: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)
    name: str | None = None

    @classmethod
    def gevrey(cls, alpha: float) -> QuotientSpec:
        if not alpha > 0:
            raise ValueError(f"gevrey order must be positive, got {alpha}")
        return cls("gevrey", alpha=float(alpha))

    @classmethod
    def gevrey_log(cls, alpha: float, beta: float) -> QuotientSpec:
        if not alpha > 0:
            raise ValueError(f"gevrey order must be positive, got {alpha}")
        return cls("gevrey_log", alpha=float(alpha), beta=float(beta))

    @classmethod
    def q_gevrey(cls, q: float) -> QuotientSpec:
        if not q > 1:
            raise ValueError(f"q-Gevrey base must exceed 1, got {q}")
        return cls("q_gevrey", q=float(q))

    @classmethod
    def paper_example(cls) -> QuotientSpec:
        return cls("paper_example")

    @classmethod
    def block(cls, low: float = 1.0, high: float = 25.0) -> QuotientSpec:
        """Quotients whose local exponent p*log(m_p/m_{p-1}) alternates
        between ``low`` and ``high`` on dyadic blocks [2^j, 2^(j+1))."""
        if not 0 <= low <= high:
            raise ValueError("block exponents need 0 <= low <= high")
        return cls("block", low=float(low), high=float(high))

    @classmethod
    def table(cls, values, name: str | None = None) -> QuotientSpec:
        return cls("table", values=tuple(float(v) for v in values), name=name)

    @classmethod
    def expression(cls, func: Callable[[np.ndarray], np.ndarray], name: str = "expression") -> QuotientSpec:
        return cls("expression", func=func, name=name)

    def label(self) -> str:
        if self.name:
            return self.name
        if self.kind == "gevrey":
            return f"gevrey:alpha={self.alpha:g}"
        if self.kind == "gevrey_log":
            return f"gevrey-log:alpha={self.alpha:g},beta={self.beta:g}"
        if self.kind == "q_gevrey":
            return f"qgevrey:q={self.q:g}"
        if self.kind == "paper_example":
            return "paper-example"
        if self.kind == "block":
            return f"block:low={self.low:g},high={self.high:g}"
        return self.kind

    def log_quotients(self, n: int) -> np.ndarray:
        p = np.arange(n, dtype=float)
        if self.kind == "gevrey":
            return self.alpha * np.log1p(p)
        if self.kind == "gevrey_log":
            return self.alpha * np.log1p(p) + self.beta * np.log(np.log(math.e + p + 1.0))
        if self.kind == "q_gevrey":
            return (2.0 * p + 1.0) * math.log(self.q)
        if self.kind == "paper_example":
            # m_0 = m_1 = 1; m_{2k} = e^{1/k} m_{2k-1}; m_{2k+1} = e^{1/(2k+1)} m_{2k}
            step = np.zeros(n)
            idx = np.arange(2, n)
            step[2:] = np.where(idx % 2 == 0, 2.0 / idx, 1.0 / idx)
            return np.cumsum(step)
        if self.kind == "block":
            step = np.zeros(n)
            idx = np.arange(1, n)
            level = np.floor(np.log2(idx)).astype(np.int64)
            slope = np.where(level % 2 == 0, self.low, self.high)
            step[1:] = slope * np.log1p(1.0 / idx)
            return np.cumsum(step)
        if self.kind == "table":
            if n > len(self.values):
                raise ValueError(f"table holds {len(self.values)} quotients, {n} requested")
            return np.array(self.values[:n], dtype=float)
        if self.kind == "expression":
            return np.asarray(self.func(np.arange(n)), dtype=float)
        raise ValueError(f"unknown quotient kind {self.kind!r}")


def read_table_file(path: str | Path) -> QuotientSpec:
    """Load quotients from a text file.

    Either one log-quotient per line, or two-column ``p,m_p`` CSV with m_p
    given in linear scale. ``#`` starts a comment in both formats.
    """
    path = Path(path)
    rows = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ValueError(f"{path}: no quotients found")

    if "," not in rows[0][1] and not any("," in r for _, r in rows):
        try:
            values = [float(r) for _, r in rows]
        except ValueError as exc:
            raise ValueError(f"{path}: {exc}") from None
        return QuotientSpec.table(values, name=f"file:{path}")

    pairs = []
    for lineno, line in rows:
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != 2:
            raise ValueError(f"{path}:{lineno}: expected two columns 'p,m_p'")
        try:
            p, m = int(cells[0]), float(cells[1])
        except ValueError:
            if not pairs:  # header
                continue
            raise ValueError(f"{path}:{lineno}: malformed row {line!r}") from None
        if not m > 0:
            raise ValueError(f"{path}:{lineno}: m_p must be > 0, got {m}")
        pairs.append((p, m))
    pairs.sort()
    if [p for p, _ in pairs] != list(range(len(pairs))):
        raise ValueError(f"{path}: indices must run 0, 1, ..., n-1")
    return QuotientSpec.table([math.log(m) for _, m in pairs], name=f"file:{path}")


# ---------------------------------------------------------------------------
# Materialized prefix
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SeqTable:
    """Prefix of a sequence: log m_p for p < n and log M_p for p <= n.

    ``logM`` is the left-to-right running sum of ``logm`` so that
    ``logM[p] == logM[p-1] + logm[p-1]`` holds bitwise.
    """

    logm: np.ndarray
    logM: np.ndarray
    label: str = "table"

    @property
    def n(self) -> int:
        return int(self.logm.size)

    @classmethod
    def from_log_quotients(cls, logm, label: str = "table") -> SeqTable:
        logm = np.array(logm, dtype=float)
        logM = np.empty(logm.size + 1)
        logM[0] = 0.0
        np.cumsum(logm, out=logM[1:])
        logm.flags.writeable = False
        logM.flags.writeable = False
        return cls(logm, logM, label)

    def truncate(self, n: int) -> SeqTable:
        if not 1 <= n <= self.n:
            raise ValueError(f"cannot truncate a table of {self.n} quotients to {n}")
        return SeqTable(self.logm[:n], self.logM[: n + 1], self.label)

    def shift(self, log_c: float) -> SeqTable:
        """Quotients of (c^p M_p): every log m_p moves by log c."""
        return SeqTable.from_log_quotients(self.logm + log_c, f"{self.label}*c^p")


def materialize(spec: QuotientSpec, n: int) -> SeqTable:
    if n < 2:
        raise ValueError(f"truncation must be >= 2, got {n}")
    with np.errstate(all="ignore"):
        logm = spec.log_quotients(n)
    if logm.shape != (n,):
        raise GenerationError(f"generator returned shape {logm.shape}, expected ({n},)")
    bad = np.flatnonzero(~np.isfinite(logm))
    if bad.size:
        raise GenerationError(f"non-finite log quotient at index p={int(bad[0])}")
    return SeqTable.from_log_quotients(logm, spec.label())


def log_convex_minorant(t: SeqTable) -> SeqTable:
    """Quotients of the largest log-convex sequence below M.

    These are the slopes of the lower convex hull of the points
    (p, log M_p). For an (lc) table the result equals the input.
    """
    if check_lc(t).status == "holds":
        return t
    y = t.logM
    hull = [0]
    for i in range(1, y.size):
        while len(hull) >= 2:
            i1, i2 = hull[-2], hull[-1]
            if (y[i2] - y[i1]) * (i - i1) >= (y[i] - y[i1]) * (i2 - i1):
                hull.pop()
            else:
                break
        hull.append(i)
    logm = np.empty(t.n)
    for i1, i2 in zip(hull, hull[1:]):
        logm[i1:i2] = (y[i2] - y[i1]) / (i2 - i1)
    return SeqTable.from_log_quotients(logm, f"{t.label} (lc minorant)")


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

@dataclass
class PropertyVerdict:
    name: str
    status: str
    truncation: int
    witness: int | tuple[int, ...] | None = None
    constant: float | None = None
    sub: dict[str, PropertyVerdict] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "truncation": self.truncation,
            "witness": list(self.witness) if isinstance(self.witness, tuple) else self.witness,
            "constant": self.constant,
            "notes": list(self.notes),
        }
        if self.sub:
            out["sub"] = {k: v.to_dict() for k, v in self.sub.items()}
        return out


def _weakest(statuses) -> str:
    return min(statuses, key=STATUS_ORDER.__getitem__)


def check_lc(t: SeqTable) -> PropertyVerdict:
    """(lc) holds iff the quotients are nondecreasing; ties count as increasing."""
    logm = t.logm
    slack = TOL_EXACT * np.maximum(1.0, np.abs(logm[:-1]))
    bad = np.flatnonzero(logm[1:] < logm[:-1] - slack)
    if bad.size:
        return PropertyVerdict("lc", "fails", t.n, witness=int(bad[0]))
    return PropertyVerdict("lc", "holds", t.n)


def _running_max_at(values: np.ndarray, counts) -> list[float]:
    run = np.maximum.accumulate(values)
    return [float(run[c - 1]) for c in counts]


def check_mg(t: SeqTable, form: str = "c") -> PropertyVerdict:
    """Moderate growth for an (lc) table via a bounded supremum.

    form ``"c"`` tracks max_p log(m_{2p}/m_p); form ``"d"`` tracks
    max_p (log M_{2p} - 2 log M_p)/p. Both are equivalent to (mg) under (lc).
    """
    n = t.n
    if n < 8:
        return PropertyVerdict("mg", "inconclusive", n, notes=["truncation below 8"])
    if check_lc(t).status != "holds":
        return PropertyVerdict("mg", "inconclusive", n, notes=["(lc) fails; criterion not applicable"])

    if form == "c":
        p = np.arange((n - 1) // 2 + 1)
        g = t.logm[2 * p] - t.logm[p]
        counts = [(N - 1) // 2 + 1 for N in truncations(n)]
    elif form == "d":
        p = np.arange(1, n // 2 + 1)
        g = (t.logM[2 * p] - 2.0 * t.logM[p]) / p
        counts = [max(1, N // 2) for N in truncations(n)]
    else:
        raise ValueError(f"unknown mg form {form!r}")

    stats = _running_max_at(g, counts)
    status = classify_bounded(*stats)
    arg = int(np.argmax(g))
    witness = None
    if status == "fails":
        witness = (int(p[arg]), 2 * int(p[arg]))
    return PropertyVerdict("mg", status, n, witness=witness, constant=stats[-1],
                           notes=[f"form ({form}) statistic at n/4, n/2, n: {stats}"])


def _snq_tail_min(t: SeqTable, k: int, N: int) -> tuple[float, int] | None:
    count = (N - 1) // k + 1
    window = tail_range(count)
    if len(window) == 0:
        return None
    p = np.arange(window.start, window.stop)
    g = t.logm[k * p] - t.logm[p]
    i = int(np.argmin(g))
    return float(g[i]), int(p[i])


def check_snq(t: SeqTable, kmax: int = 4) -> PropertyVerdict:
    """Strong non-quasianalyticity through liminf m_{kp}/m_p > 1 for some k."""
    if kmax < 2:
        raise ValueError("kmax must be >= 2")
    n = t.n
    if check_lc(t).status != "holds":
        return PropertyVerdict("snq", "inconclusive", n, notes=["(lc) fails; criterion not applicable"])

    per_k = {}
    for k in range(2, kmax + 1):
        mins = [_snq_tail_min(t, k, N) for N in truncations(n)]
        if mins[-1] is not None:
            per_k[k] = mins
    if not per_k:
        return PropertyVerdict("snq", "inconclusive", n, notes=["no usable tail window"])

    best_k = max(per_k, key=lambda k: per_k[k][-1][0])
    best, best_p = per_k[best_k][-1]
    notes = [f"k={k}: tail min {m[-1][0]:.6g}" for k, m in per_k.items()]
    if best >= DELTA_SNQ:
        return PropertyVerdict("snq", "holds", n, witness=best_k, constant=best, notes=notes)

    def decaying(mins):
        vals = [m[0] for m in mins if m is not None]
        return len(vals) == 3 and vals[0] >= vals[1] >= vals[2]

    if all(decaying(m) for m in per_k.values()):
        return PropertyVerdict("snq", "fails", n, witness=(best_p, best_k * best_p),
                               constant=best, notes=notes)
    return PropertyVerdict("snq", "inconclusive", n, constant=best, notes=notes)


def check_strongly_regular(t: SeqTable, kmax: int = 4) -> PropertyVerdict:
    if t.n < 8:
        raise ValueError("strong regularity needs a truncation of at least 8")
    sub = {"lc": check_lc(t), "mg": check_mg(t), "snq": check_snq(t, kmax)}
    status = _weakest(v.status for v in sub.values())
    failing = [k for k, v in sub.items() if v.status == "fails"]
    witness = sub[failing[0]].witness if failing else None
    return PropertyVerdict("strongly_regular", status, t.n, witness=witness, sub=sub,
                           notes=[f"failing: {', '.join(failing)}"] if failing else [])


# ---------------------------------------------------------------------------
# Algebra and equivalence
# ---------------------------------------------------------------------------

def scale_by_factorial_power(t: SeqTable, eps: float) -> SeqTable:
    """Quotients of (M_p (p!)^eps): m_p multiplied by (p+1)^eps."""
    if eps == 0:
        return t
    p = np.arange(t.n, dtype=float)
    return SeqTable.from_log_quotients(t.logm + eps * np.log1p(p), f"{t.label}*(p!)^{eps:g}")


def _same_truncation(a: SeqTable, b: SeqTable) -> None:
    if a.n != b.n:
        raise ValueError(f"truncation mismatch: {a.n} vs {b.n}")


def quotient_equivalent(a: SeqTable, b: SeqTable) -> PropertyVerdict:
    """m ~ l: log m_p - log l_p stays bounded."""
    _same_truncation(a, b)
    diff = np.abs(a.logm - b.logm)
    stats = _running_max_at(diff, truncations(a.n))
    status = classify_bounded(*stats)
    witness = int(np.argmax(diff)) if status == "fails" else None
    return PropertyVerdict("quotient_equivalent", status, a.n, witness=witness, constant=stats[-1])


def sequence_equivalent(a: SeqTable, b: SeqTable) -> PropertyVerdict:
    """M ~ L: |log M_p - log L_p| / p stays bounded over p >= 1."""
    _same_truncation(a, b)
    p = np.arange(1, a.n + 1)
    diff = np.abs(a.logM[1:] - b.logM[1:]) / p
    stats = _running_max_at(diff, truncations(a.n))
    status = classify_bounded(*stats)
    witness = int(p[np.argmax(diff)]) if status == "fails" else None
    return PropertyVerdict("sequence_equivalent", status, a.n, witness=witness, constant=stats[-1])


__all__ = [
    "BURN_IN", "GenerationError", "PropertyVerdict", "QuotientSpec", "SeqTable",
    "check_lc", "check_mg", "check_snq", "check_strongly_regular", "log_convex_minorant",
    "materialize", "quotient_equivalent", "read_table_file", "scale_by_factorial_power",
    "sequence_equivalent",
]
