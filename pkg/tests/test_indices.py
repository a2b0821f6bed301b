import math

import numpy as np
import pytest
from conftest import fixture_table, table
from oracles import gevrey1_beta, riesz_naive

from regseq.indices import (DegenerateInputError, alpha_beta, flat_condition_clusters,
                            lambda_exponent, moricz_scan, omega, proximate_order_verdict,
                            riesz_mean)
from regseq.seqcore import SeqTable


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 2.0])
def test_gevrey_omega_and_lambda(alpha):
    t = table("gevrey", 100_000, alpha)
    om, lam = omega(t), lambda_exponent(t)
    assert abs(om.value - alpha) < 5e-3
    assert abs(om.value * lam.value - 1) < 1e-2
    assert om.converged
    assert [n for n, _ in om.windows] == [25_000, 50_000, 100_000]


def test_raw_omega_is_kept_in_bounds():
    t = fixture_table("paper-example")
    om = omega(t)
    lo, hi = om.bounds
    assert lo < om.value
    assert omega(t, extrapolate=False).value == pytest.approx(lo)


def test_omega_diverges_on_qgevrey():
    om = omega(fixture_table("qgevrey-2"))
    assert om.value == math.inf and om.diverging
    assert lambda_exponent(fixture_table("qgevrey-2")).value < 1e-3


def test_degenerate_inputs():
    with pytest.raises(DegenerateInputError):
        omega(SeqTable.from_log_quotients(np.zeros(100)))
    with pytest.raises(DegenerateInputError):
        lambda_exponent(table("gevrey", 20, 1.0))


def test_oscillating_slopes_fall_back_to_anchored_slope():
    om = omega(fixture_table("block-oscillating"))
    assert any("oscillate" in note for note in om.notes)
    assert om.method.endswith(":anchored")
    assert abs(om.value - om.bounds[0]) < 0.5


def test_beta_matches_stirling_oracle():
    t = table("gevrey", 100_001, 1.0)
    beta = alpha_beta(t).beta
    p = 100_000
    assert abs(beta[p] - gevrey1_beta(p)) < 1e-9
    assert abs(beta[p] - 1) < 1e-3


def test_beta_round_trip():
    rng = np.random.default_rng(2)
    t = SeqTable.from_log_quotients(np.cumsum(rng.exponential(0.01, 1000)))
    ab = alpha_beta(t)
    assert np.allclose(ab.reconstruct_alpha(), ab.alpha, rtol=1e-12, atol=1e-12)


def test_riesz_mean():
    s = np.ones(1000)
    r = riesz_mean(s)
    assert r.value == pytest.approx(1.0) and r.converged
    rng = np.random.default_rng(3)
    x = rng.normal(size=500)
    raw = riesz_mean(x, extrapolate=False)
    assert raw.value == pytest.approx(riesz_naive(x, 500), rel=1e-12)
    with pytest.raises(ValueError):
        riesz_mean(np.ones(5))


def test_riesz_of_gevrey_beta():
    beta = alpha_beta(table("gevrey", 100_001, 1.0)).beta[1:]
    assert abs(riesz_mean(beta).value - 1) < 1e-2


def test_moricz_directions():
    beta = alpha_beta(table("gevrey", 100_001, 1.0)).beta[1:]
    good = moricz_scan(beta)
    assert good.max_above >= -1e-3 and good.max_below >= -1e-3 and good.satisfied
    alt = np.array([(-1.0) ** k for k in range(1, 100_001)])
    bad = moricz_scan(alt)
    assert bad.max_above <= -0.1 and not bad.satisfied


def test_moricz_count_normalization_vanishes():
    alt = np.array([(-1.0) ** k for k in range(1, 100_001)])
    assert abs(moricz_scan(alt, normalization="count").max_above) < 1e-2


def test_moricz_validation():
    with pytest.raises(ValueError):
        moricz_scan(np.r_[np.ones(10), np.inf])
    with pytest.raises(ValueError):
        moricz_scan(np.ones(100), above=())


def test_paper_example_verdict():
    v = proximate_order_verdict(fixture_table("paper-example"))
    assert v.status == "proximate-order"
    assert all(x.status == "converging" for x in (v.b, v.c, v.d))
    omegas = [v.b.omega, v.c.omega, v.d.omega]
    assert max(omegas) - min(omegas) < 1e-2
    assert abs(omega(fixture_table("paper-example")).value - 1.5) < 1e-2
    clusters = sorted(v.flat_condition["clusters"])
    assert v.flat_condition["n_clusters"] == 2
    assert abs(clusters[0] - 1) < 1e-2 and abs(clusters[1] - 2) < 1e-2


def test_gevrey_verdict_and_flat_condition():
    t = table("gevrey", 100_000, 1.0)
    v = proximate_order_verdict(t)
    assert v.status == "proximate-order" and v.agreement
    assert flat_condition_clusters(t)["exists"]


def test_block_is_not_a_proximate_order():
    v = proximate_order_verdict(fixture_table("block-oscillating"))
    assert v.c.raw_limsup - v.c.raw_liminf >= 0.5
    assert v.status == "not-a-proximate-order"


def test_qgevrey_not_applicable():
    assert proximate_order_verdict(fixture_table("qgevrey-2")).status == "not-applicable"


def test_index_scaling_invariance():
    t = table("gevrey", 100_000, 1.5)
    base = omega(t).value
    for c in (0.5, 3.0):
        assert abs(omega(t.shift(math.log(c))).value - base) < 5e-3
