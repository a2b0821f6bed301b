"""Acceptance criteria, one test and one printed PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ALL_FIXTURES, fixture_table, table  # noqa: E402
from oracles import gevrey1_beta, random_lc_logm  # noqa: E402

from regseq.fixtures import CORPUS  # noqa: E402
from regseq.growthfn import GrowthEvaluator, big_m, big_m_integral, nu  # noqa: E402
from regseq.indices import (alpha_beta, lambda_exponent, moricz_scan, omega,  # noqa: E402
                            proximate_order_verdict, riesz_mean)
from regseq.regvar import (gamma_index, omega_equals_gamma_check, regularize_quotients,  # noqa: E402
                           rv_test)
from regseq.seqcore import (SeqTable, check_lc, check_mg, check_snq,  # noqa: E402
                            check_strongly_regular, quotient_equivalent, sequence_equivalent)

TOL_EXACT = 1e-12


def _line(number: int, title: str, results: dict[str, bool], capsys=None) -> None:
    ok = all(results.values())
    failed = [k for k, v in results.items() if not v]
    text = f"ACCEPTANCE {number} {title}: {'PASS' if ok else 'FAIL'}"
    if failed:
        text += " (failed: " + "; ".join(failed) + ")"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + text)
    else:
        print(text)
    assert ok, text


def _rel_ok(a, b, scale) -> bool:
    return bool(np.all(np.abs(np.asarray(a) - np.asarray(b)) <= TOL_EXACT * np.maximum(1.0, scale)))


def criterion_1() -> dict[str, bool]:
    res = {}
    for name in ALL_FIXTURES:
        t = fixture_table(name)
        res[f"{name}: cumulative reconstruction"] = bool(np.array_equal(t.logM[1:], t.logM[:-1] + t.logm))
        ev = GrowthEvaluator.build(t)
        rng = np.random.default_rng(11)
        x = np.sort(rng.uniform(ev.log_floor, ev.log_t_max, 1000))
        k = np.asarray(nu(ev, x))
        res[f"{name}: two-path M(t)"] = _rel_ok(big_m(ev, x), big_m_integral(ev, x), k * np.abs(x))
        p = np.unique(rng.integers(1, t.n, 1000))
        xm = t.logm[p]
        res[f"{name}: M(m_p) identity"] = _rel_ok(big_m(ev, xm), p * xm - t.logM[p], p * np.abs(xm))
    worst = 0.0
    for seed in range(100):
        t = SeqTable.from_log_quotients(random_lc_logm(np.random.default_rng(seed), 1000))
        ab = alpha_beta(t)
        err = np.abs(ab.reconstruct_alpha() - ab.alpha) / np.maximum(1.0, np.abs(ab.alpha))
        worst = max(worst, float(err.max()))
    res["beta round-trip on 100 random (lc) tables"] = worst <= TOL_EXACT
    return res


def criterion_2() -> dict[str, bool]:
    res = {}
    for alpha in (0.5, 1.0, 1.5, 2.0):
        t = table("gevrey", 100_000, alpha)
        om, lam = omega(t).value, lambda_exponent(t).value
        rv = rv_test(t)
        res[f"alpha={alpha}: omega"] = abs(om - alpha) < 5e-3
        res[f"alpha={alpha}: lambda*omega"] = abs(lam * om - 1) < 1e-2
        res[f"alpha={alpha}: gamma"] = abs(gamma_index(t, om).value - alpha) < 0.02
        res[f"alpha={alpha}: rv coherent"] = rv.coherent and abs(rv.index - alpha) < 5e-3
    return res


def criterion_3() -> dict[str, bool]:
    t = fixture_table("paper-example")
    v = proximate_order_verdict(t)
    omegas = [v.b.omega, v.c.omega, v.d.omega]
    clusters = sorted(v.flat_condition["clusters"])
    return {
        "omega within 1e-2 of 1.5": abs(omega(t).value - 1.5) < 1e-2,
        "(b),(c),(d) converging": all(x.status == "converging" for x in (v.b, v.c, v.d)),
        "(b),(c),(d) consistent within 1e-2": max(omegas) - min(omegas) < 1e-2,
        "two flat-condition clusters near {1, 2}": v.flat_condition["n_clusters"] == 2
        and abs(clusters[0] - 1) < 1e-2 and abs(clusters[1] - 2) < 1e-2,
    }


def criterion_4() -> dict[str, bool]:
    t = fixture_table("qgevrey-2")
    mg = check_mg(t)
    return {
        "mg fails with witness": mg.status == "fails" and mg.witness is not None,
        "lc holds": check_lc(t).status == "holds",
        "snq holds": check_snq(t).status == "holds",
        "omega diverging sentinel": omega(t).value == math.inf,
    }


def criterion_5() -> dict[str, bool]:
    p = 100_000
    beta = alpha_beta(table("gevrey", p + 1, 1.0)).beta
    oracle = gevrey1_beta(p)
    return {
        "beta_p matches log-factorial oracle": abs(beta[p] - oracle) < 1e-9,
        "beta_p within 1e-3 of 1": abs(beta[p] - 1) < 1e-3 and abs(oracle - 1) < 1e-3,
        "Riesz mean within 1e-2 of 1": abs(riesz_mean(beta[1:]).value - 1) < 1e-2,
    }


def criterion_6() -> dict[str, bool]:
    beta = alpha_beta(table("gevrey", 100_001, 1.0)).beta[1:]
    good = moricz_scan(beta)
    alt = moricz_scan(np.array([(-1.0) ** k for k in range(1, 100_001)]))
    return {
        "gevrey beta: lambda>1 branch >= -1e-3": good.max_above >= -1e-3,
        "gevrey beta: lambda<1 branch >= -1e-3": good.max_below >= -1e-3,
        "alternating: lambda>1 branch <= -0.1": alt.max_above <= -0.1,
    }


def criterion_7() -> dict[str, bool]:
    t = fixture_table("block-oscillating")
    v = proximate_order_verdict(t)
    return {
        "(c) split >= 0.5": v.c.raw_limsup - v.c.raw_liminf >= 0.5,
        "not a proximate order": v.status == "not-a-proximate-order",
        "rv_test incoherent": not rv_test(t).coherent,
        "omega=gamma check not-applicable": omega_equals_gamma_check(t, v).status == "not-applicable",
    }


def criterion_8() -> dict[str, bool]:
    res = {}
    tables = [(name, fixture_table(name)) for name in ALL_FIXTURES]
    tables += [(f"random-{s}", SeqTable.from_log_quotients(random_lc_logm(np.random.default_rng(1000 + s), 1000)))
               for s in range(100)]
    for gamma in (0.0, 0.5, 1.0):
        ok = True
        for _, t in tables:
            try:
                regularize_quotients(t, gamma)
            except RuntimeError:
                ok = False
        res[f"gamma={gamma}: postconditions on fixtures and 100 random tables"] = ok
    return res


def criterion_9() -> dict[str, bool]:
    res = {}
    scaling = True
    for name in ALL_FIXTURES:
        t = fixture_table(name)
        base_sr = check_strongly_regular(t)
        base_idx = [omega(t).value, lambda_exponent(t).value]
        for c in (0.5, 3.0):
            s = t.shift(math.log(c))
            sr = check_strongly_regular(s)
            scaling &= sr.status == base_sr.status and all(
                sr.sub[k].status == base_sr.sub[k].status for k in sr.sub)
            for a, b in zip(base_idx, [omega(s).value, lambda_exponent(s).value]):
                scaling &= a == b or abs(a - b) < 5e-3
    res["scaling invariance of verdicts and indices"] = bool(scaling)

    convex = True
    for name in ALL_FIXTURES:
        ev = GrowthEvaluator.build(fixture_table(name))
        rng = np.random.default_rng(5)
        a = rng.uniform(ev.log_floor, ev.log_t_max, 1000)
        b = rng.uniform(ev.log_floor, ev.log_t_max, 1000)
        chord = 0.5 * (big_m(ev, a) + big_m(ev, b))
        convex &= bool(np.all(big_m(ev, 0.5 * (a + b)) <= chord + TOL_EXACT * np.maximum(1.0, chord)))
    res["M log-convex on grids"] = convex

    implication = True
    for seed in range(50):
        rng = np.random.default_rng(2000 + seed)
        t = SeqTable.from_log_quotients(random_lc_logm(rng, 2000))
        u = SeqTable.from_log_quotients(t.logm + rng.uniform(-1, 1, 2000))
        implication &= quotient_equivalent(t, u).status == "holds" and \
            sequence_equivalent(t, u).status == "holds"
    res["quotient equivalence implies sequence equivalence on 50 pairs"] = bool(implication)

    bound = True
    for f in CORPUS:
        t = fixture_table(f.name)
        if check_strongly_regular(t).status != "holds":
            continue
        om = omega(t).value
        bound &= gamma_index(t, om).value <= om + 1e-2
    res["gamma <= omega + 1e-2 on strongly regular fixtures"] = bool(bound)
    return res


CRITERIA = {
    1: ("exact identities", criterion_1),
    2: ("Gevrey indices", criterion_2),
    3: ("oscillating counterexample", criterion_3),
    4: ("q-Gevrey", criterion_4),
    5: ("beta convergence", criterion_5),
    6: ("Moricz scan", criterion_6),
    7: ("block negative control", criterion_7),
    8: ("regularization", criterion_8),
    9: ("property suites", criterion_9),
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_acceptance(number, capsys):
    title, fn = CRITERIA[number]
    _line(number, title, fn(), capsys)


if __name__ == "__main__":
    failures = 0
    for number, (title, fn) in sorted(CRITERIA.items()):
        try:
            _line(number, title, fn())
        except AssertionError:
            failures += 1
    sys.exit(1 if failures else 0)
