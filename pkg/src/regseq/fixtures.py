"""Built-in fixtures with the truncations their expected values are calibrated to."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .seqcore import QuotientSpec, SeqTable, materialize


@dataclass(frozen=True)
class Fixture:
    name: str
    spec: QuotientSpec
    n: int

    def table(self, n: int | None = None) -> SeqTable:
        return materialize(self.spec, self.n if n is None else n)


CORPUS = (
    Fixture("gevrey-1", QuotientSpec.gevrey(1.0), 100_000),
    Fixture("gevrey-1.5", QuotientSpec.gevrey(1.5), 100_000),
    Fixture("gevrey-2", QuotientSpec.gevrey(2.0), 100_000),
    Fixture("gevrey-log-1-2", QuotientSpec.gevrey_log(1.0, 2.0), 1_000_000),
    Fixture("qgevrey-2", QuotientSpec.q_gevrey(2.0), 100_000),
    Fixture("paper-example", QuotientSpec.paper_example(), 1_000_000),
)

# Local log-log slope alternates 1 and 25 on dyadic blocks [2^j, 2^(j+1)).
# At n = 2^17 the tail half is exactly one block.
BLOCK = Fixture("block-oscillating", QuotientSpec.block(1.0, 25.0), 2 ** 17)


def _slow_log(p: np.ndarray) -> np.ndarray:
    return 0.25 * np.log(np.log(np.e + p))


# m_p = log(e + p)^(1/4): increasing, but m_{kp}/m_p -> 1 for every k
SLOW_SNQ = Fixture("slowly-varying", QuotientSpec.expression(_slow_log, "slowly-varying"), 10_000)


def by_name(name: str) -> Fixture:
    for f in (*CORPUS, BLOCK, SLOW_SNQ):
        if f.name == name:
            return f
    raise KeyError(name)
