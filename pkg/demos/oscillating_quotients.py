"""A sequence whose quotient steps alternate between 2/p and 1/p.

Its order is 3/2 and d_M is a proximate order, yet p log(m_{p+1}/m_p)
has two limit points, so the naive derivative condition fails.
"""
from regseq import QuotientSpec, materialize
from regseq.indices import omega, proximate_order_verdict
from regseq.regvar import gamma_index

t = materialize(QuotientSpec.paper_example(), 1_000_000)
om = omega(t)
print(f"omega = {om.value:.5f}")

v = proximate_order_verdict(t)
print("verdict:", v.status)
for key, check in (("b", v.b), ("c", v.c), ("d", v.d)):
    print(f"  ({key}) {check.quantity:28s} {check.status:11s} omega-equivalent {check.omega:.5f}")

flat = v.flat_condition
print("p log(m_{p+1}/m_p) clusters:", [round(c, 4) for c in flat["clusters"]])

g = gamma_index(t, om.value)
print(f"gamma = {g.value:.5f}, bracket {g.bracket[0]:.5f}..{g.bracket[1]:.5f}")
