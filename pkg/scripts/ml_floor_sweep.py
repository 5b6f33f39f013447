"""Measure the accuracy floor of ml_two across the series/asymptotic handoff.

The cancelling power series loses eps*exp(u) and the truncated expansion
e^(-u) at u = |z|^(1/alpha); they cross near u ~ 18, which is where the
evaluator switches routes or escalates to the arbitrary-precision rescue.
This sweep prints the worst relative error per alpha against a slow
mpmath reference so regressions in the handoff show up immediately.
"""

import math

import numpy as np
from mpmath import mp

from fracfield import ml_two


def reference(a, b, z):
    u = abs(z) ** (1.0 / a)
    mp.dps = int(u / math.log(10)) + 40
    am, bm, zz = mp.mpf(a), mp.mpf(b), mp.mpc(z)
    total = mp.mpc(0)
    power = mp.mpc(1)
    for k in range(0, 40000):
        total += power * mp.rgamma(bm + am * k)
        power *= zz
        if k > 4 and abs(power) * abs(mp.rgamma(bm + am * (k + 1))) \
                < mp.mpf(10) ** (-mp.dps + 5) * (1 + abs(total)):
            break
    return complex(total)


def sweep(alpha, beta, umin=5.0, umax=30.0, n=60):
    worst = (0.0, None)
    for u in np.linspace(umin, umax, n):
        z = -(u ** alpha)
        want = reference(alpha, beta, z)
        got = complex(ml_two(alpha, beta, z))
        rel = abs(got - want) / max(abs(want), 1e-300)
        if rel > worst[0]:
            worst = (rel, z)
    return worst


if __name__ == "__main__":
    print("negative axis, u = |z|^(1/alpha) swept through the handoff band")
    for alpha, beta in ((1.0, 1.0), (1.25, 1.0), (1.5, 1.0), (1.5, 0.5),
                        (1.75, 1.0), (2.0, 1.0), (2.0, 2.0)):
        rel, zworst = sweep(alpha, beta)
        print("alpha=%-5g beta=%-4g worst rel = %.2e  at z = %.6g"
              % (alpha, beta, rel, zworst))
