"""Gevrey sequences M_p = (p!)^alpha: the simplest strongly regular family.

Every index we can estimate should land on alpha, and the associated
function should grow like t^(1/alpha).
"""
import numpy as np

from regseq import QuotientSpec, materialize
from regseq.growthfn import GrowthEvaluator, d_m, evaluation_grid
from regseq.indices import lambda_exponent, omega
from regseq.regvar import gamma_index, rv_test
from regseq.seqcore import check_strongly_regular

for alpha in (0.5, 1.0, 2.0):
    t = materialize(QuotientSpec.gevrey(alpha), 100_000)
    print(f"alpha = {alpha}")
    print("  strongly regular:", check_strongly_regular(t).status)

    om = omega(t)
    # the raw tail minimum is kept next to the extrapolated value
    print(f"  omega  {om.value:.5f}   (raw tail liminf {om.bounds[0]:.5f})")
    print(f"  lambda {lambda_exponent(t).value:.5f}")
    print(f"  gamma  {gamma_index(t, om.value).value:.5f}")
    rv = rv_test(t)
    print(f"  regular variation index {rv.index:.5f} (coherent: {rv.coherent})")

    ev = GrowthEvaluator.build(t)
    x = evaluation_grid(ev)
    print(f"  d_M at t = e^{x[-1]:.2f}: {d_m(ev, x[-1]):.4f}  (1/alpha = {1 / alpha:.4f})")
    print()

# Scaling M_p by c^p moves every quotient by log c but no index.
t = materialize(QuotientSpec.gevrey(1.5), 100_000)
for c in (0.5, 1.0, 3.0):
    print(f"c = {c}: omega {omega(t.shift(np.log(c))).value:.5f}")
