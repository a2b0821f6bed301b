"""Run every diagnostic on one sequence and serialize the result as JSON."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from .constants import TOL_IDX
from .growthfn import GrowthEvaluator
from .indices import alpha_beta, lambda_exponent, moricz_scan, omega, proximate_order_verdict, riesz_mean
from .regvar import gamma_index, omega_equals_gamma_check, rv_test
from .seqcore import (SeqTable, check_lc, check_mg, check_snq, check_strongly_regular)

HEADER_KEY = "header"


@dataclass
class AnalysisReport:
    fixture: str
    truncation: int
    properties: dict
    indices: dict
    proximate_order: dict
    regular_variation: dict | None
    gamma: dict | None
    cross_checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> AnalysisReport:
        return cls(**{k: v for k, v in d.items() if k != HEADER_KEY})


def _encode(x):
    if isinstance(x, dict):
        return {str(k): _encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "+inf" if x > 0 else "-inf"
        return x
    return x


_SPECIAL = {"+inf": math.inf, "-inf": -math.inf, "nan": math.nan}


def _decode(x):
    if isinstance(x, dict):
        return {k: _decode(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_decode(v) for v in x]
    if isinstance(x, str) and x in _SPECIAL:
        return _SPECIAL[x]
    return x


def serialize(report: AnalysisReport, header: dict | None = None) -> str:
    """Canonical JSON. Non-finite floats become "+inf", "-inf" or "nan".

    ``header`` (a timestamp, typically) is written under its own key and
    dropped again by :func:`parse`, so it never affects round-trips.
    """
    body = _encode(report.to_dict())
    if header is not None:
        body = {HEADER_KEY: _encode(header), **body}
    return json.dumps(body, indent=2, allow_nan=False, ensure_ascii=False) + "\n"


def parse(text: str) -> AnalysisReport:
    return AnalysisReport.from_dict(_decode(json.loads(text)))


def timestamp_header() -> dict:
    return {"generated": datetime.now(timezone.utc).isoformat(timespec="seconds")}


def _check(name: str, passed, **detail) -> dict:
    return {"name": name, "passed": None if passed is None else bool(passed), **detail}


def analyze(t: SeqTable, fixture: str | None = None) -> AnalysisReport:
    """Full diagnostic run on one table. Never raises on a verdict."""
    notes: list[str] = []
    ev = GrowthEvaluator.build(t)
    sr = check_strongly_regular(t)
    mg_d = check_mg(t, form="d")
    properties = {
        "lc": check_lc(t).to_dict(),
        "mg": check_mg(t).to_dict(),
        "snq": check_snq(t).to_dict(),
        "strongly_regular": sr.to_dict(),
    }
    lam = lambda_exponent(t)
    om = omega(t)
    beta = alpha_beta(t).beta[1:]
    riesz = riesz_mean(beta)
    mor = moricz_scan(beta)
    indices = {
        "lambda": lam.to_dict(),
        "omega": om.to_dict(),
        "riesz_beta": riesz.to_dict(),
        "moricz_beta": mor.to_dict(),
    }
    verdict = proximate_order_verdict(t, ev)

    try:
        rv = rv_test(t)
        rv_dict = rv.to_dict()
    except ValueError as exc:
        rv, rv_dict = None, None
        notes.append(f"regular variation skipped: {exc}")

    gam = None
    try:
        gam = gamma_index(t, om.value)
    except ValueError as exc:
        notes.append(f"gamma skipped: {exc}")

    og = omega_equals_gamma_check(t, verdict, om.value, None if gam is None else gam.value) \
        if gam is not None else None

    checks = []
    if math.isfinite(om.value) and math.isfinite(lam.value):
        prod = lam.value * om.value
        checks.append(_check("lambda_times_omega", abs(prod - 1) < 2 * TOL_IDX, value=prod))
    checks.append(_check("mg_forms_agree", mg_d.status == properties["mg"]["status"],
                         c=properties["mg"]["status"], d=mg_d.status))
    if og is not None:
        checks.append(_check("omega_equals_gamma", None if og.status == "not-applicable"
                             else og.status == "pass", **og.to_dict()))
    if gam is not None and sr.status == "holds" and math.isfinite(om.value) \
            and math.isfinite(gam.value):
        checks.append(_check("gamma_le_omega", gam.value <= om.value + TOL_IDX,
                             omega=om.value, gamma=gam.value))
    if rv is not None and rv.coherent and math.isfinite(om.value):
        checks.append(_check("rv_index_matches_omega", abs(rv.index - om.value) < TOL_IDX,
                             index=rv.index, omega=om.value))
    if math.isfinite(om.value) and riesz.converged and abs(riesz.value - om.value) < TOL_IDX \
            and mor.satisfied:
        d = verdict.d
        checks.append(_check("beta_limit_matches_omega", abs(d.omega - om.value) < TOL_IDX,
                             beta_limit=d.omega, omega=om.value))

    report = AnalysisReport(
        fixture=fixture or t.label,
        truncation=t.n,
        properties=properties,
        indices=indices,
        proximate_order=verdict.to_dict(),
        regular_variation=rv_dict,
        gamma=None if gam is None else gam.to_dict(),
        cross_checks=checks,
        notes=notes,
    )
    # normalize to exactly what a JSON round-trip produces (tuples -> lists)
    return AnalysisReport.from_dict(_decode(json.loads(json.dumps(_encode(report.to_dict())))))
