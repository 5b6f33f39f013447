"""Regenerate the high-precision reference constants frozen into the tests.

Every value is summed directly in mpmath at dps=60, independently of the
package code, so the tests compare two genuinely different evaluation
routes.  Run from the repo root:

    python3 scripts/make_reference_values.py
"""

import math

from mpmath import mp

mp.dps = 60


def ml_two_ref(a, b, z):
    a, b, z = mp.mpf(a), mp.mpf(b), mp.mpc(z)
    total = mp.mpc(0)
    power = mp.mpc(1)
    for k in range(0, 100000):
        total += power * mp.rgamma(b + a * k)
        power *= z
        if k > 4 and abs(power) * abs(mp.rgamma(b + a * (k + 1))) \
                < mp.mpf(10) ** (-mp.dps - 5) * (1 + abs(total)):
            break
    return total


def ml_three_ref(a, b, g, z):
    a, b, g, z = mp.mpf(a), mp.mpf(b), mp.mpf(g), mp.mpc(z)
    total = mp.mpc(0)
    for k in range(0, 100000):
        t = mp.rf(g, k) / mp.factorial(k) * z ** k * mp.rgamma(b + a * k)
        total += t
        if k > 4 and abs(t) < mp.mpf(10) ** (-mp.dps - 5) * (1 + abs(total)):
            break
    return total


def ml_four_ref(a, b, g, kap, z):
    a, b, g, kap, z = (mp.mpf(a), mp.mpf(b), mp.mpf(g), mp.mpf(kap),
                       mp.mpc(z))
    total = mp.mpc(0)
    for n in range(0, 100000):
        poch = mp.gamma(g + kap * n) / mp.gamma(g)
        t = poch / mp.factorial(n) * z ** n * mp.rgamma(b + a * n)
        total += t
        if n > 4 and abs(t) < mp.mpf(10) ** (-mp.dps - 5) * (1 + abs(total)):
            break
    return total


def wright_ref(a, b, z):
    # for a < 0 the gamma argument walks down through poles, where a
    # single-term lookahead sees an exact zero; demand a run of quiet terms
    a, b, z = mp.mpf(a), mp.mpf(b), mp.mpc(z)
    total = mp.mpc(0)
    quiet = 0
    for n in range(0, 100000):
        t = z ** n / mp.factorial(n) * mp.rgamma(b + a * n)
        total += t
        if abs(t) < mp.mpf(10) ** (-mp.dps - 5) * (1 + abs(total)):
            quiet += 1
            if quiet >= 8:
                break
        else:
            quiet = 0
    return total


CASES = [
    ("ml_two(1.5, 1.0, -8.0)", ml_two_ref(1.5, 1.0, -8.0)),
    ("ml_three(1.0, 1.0, 2.0, 0.3)", ml_three_ref(1.0, 1.0, 2.0, 0.3)),
    ("ml_four(1.5, 1.0, 2.0, kappa=1.2; z=0.5)",
     ml_four_ref(1.5, 1.0, 2.0, 1.2, 0.5)),
    ("wright(-0.75, 0.25, -1.5)", wright_ref(-0.75, 0.25, -1.5)),
]

if __name__ == "__main__":
    print("# dps = %d" % mp.dps)
    for label, val in CASES:
        as_float = float(val.real)
        if abs(val.imag) > mp.mpf(10) ** (-50):
            raise SystemExit("unexpected imaginary part in %s" % label)
        print("%-45s %r" % (label, as_float))
        print("%-45s %s" % ("", mp.nstr(val.real, 30)))
    # sanity: e and cos identities through the same summation code
    assert abs(ml_two_ref(1, 1, 1) - mp.e) < mp.mpf(10) ** -55
    assert abs(ml_two_ref(2, 1, -(mp.pi / 3) ** 2) - mp.mpf("0.5")) \
        < mp.mpf(10) ** -55
    print("# identity sanity checks passed")
