"""Sequences that should be rejected, and how each diagnostic says so."""
from regseq.fixtures import BLOCK, SLOW_SNQ, CORPUS
from regseq.indices import omega, proximate_order_verdict
from regseq.regvar import omega_equals_gamma_check, rv_test
from regseq.seqcore import check_mg, check_snq

# q-Gevrey: m_p = q^(2p+1) grows too fast for moderate growth.
q = next(f for f in CORPUS if f.name == "qgevrey-2").table()
mg = check_mg(q)
print("q-Gevrey mg:", mg.status, "witness (p, 2p) =", mg.witness)
print("q-Gevrey omega:", omega(q).value)

# m_p = log(e+p)^(1/4): increasing, but m_{kp}/m_p -> 1.
s = SLOW_SNQ.table()
snq = check_snq(s)
print("slowly varying snq:", snq.status, f"(tail min {snq.constant:.4f})")

# Local slope alternating 1 and 25 on dyadic blocks.
b = BLOCK.table()
v = proximate_order_verdict(b)
print("block: raw log m_p/log p spans", f"[{v.c.raw_liminf:.3f}, {v.c.raw_limsup:.3f}]")
print("block verdict:", v.status)
print("block regular variation coherent:", rv_test(b).coherent)
print("block omega=gamma check:", omega_equals_gamma_check(b, v).status)
