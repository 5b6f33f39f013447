"""Independent numerical oracles: forward Laplace transform by adaptive
quadrature, inverse Laplace transform on a cotangent contour, half-line
cosine integrals, and a high-precision separation-of-variables reference
for gaussian boundary data.

Nothing here shares quadrature code with the solver; these routines exist
so the closed forms can be checked against machinery with different
failure modes.
"""

from __future__ import annotations

import cmath
import math
import warnings
from typing import Callable

import numpy as np
from mpmath import mp
from scipy import integrate

from .errors import (ContourFailure, DomainError, QuadratureFailure,
                     SlowDecay, TailDominance)
from .fracops import SampledFunction, as_sampled

_QUAD_LIMIT = 400


def _quad(fn, a, b, tol, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return integrate.quad(fn, a, b, epsabs=tol, epsrel=1e-11,
                              limit=_QUAD_LIMIT, **kw)


# ---------------------------------------------------------------------------
# forward Laplace

def _tail_envelope(f, sigma: float, Y: float) -> float:
    """Damped envelope |f(t)| exp(-sigma t) sampled near the cutoff,
    guarded against exp overflow when sigma is negative."""
    env = 0.0
    for t in (0.5 * Y, 0.75 * Y, Y):
        m = abs(f(t))
        arg = -sigma * t
        if arg > 700.0:
            if m > 0.0:
                return math.inf
            continue
        env = max(env, m * math.exp(arg))
    return env


def numeric_laplace(f, s: complex, tol: float = 1e-9) -> complex:
    """integral_0^inf f(t) exp(-s t) dt by direct quadrature.

    The upper limit is cut at Y with exp(-Re(s) Y) * max|f| below 0.1*tol;
    when no such Y exists (transform outside its strip of convergence, or
    f outgrowing the exponential) the routine raises TailDominance rather
    than returning a number it cannot trust.  Re(s) <= 0 is allowed as
    long as f decays fast enough to pay for the growing exponential;
    the envelope march below is what decides.
    """
    f = as_sampled(f)
    s = complex(s)
    sigma = s.real

    # march the cutoff out until the damped envelope of f is negligible
    Y = 8.0
    while True:
        env = _tail_envelope(f, sigma, Y)
        if env < 0.1 * tol:
            break
        Y *= 1.6
        if Y > 700.0:
            raise TailDominance(
                "integrand envelope still %.2e at t=%.0f; transform "
                "point too close to the growth rate of f" % (env, Y))
    if sigma < 0.0 and -sigma * Y > 690.0:
        # the bare exponential factor overflows a double somewhere on
        # [0, Y] even though the product with f may be small; quadrature
        # cannot assemble the integrand, so refuse honestly
        raise TailDominance(
            "exp(%.2f * t) exceeds double range before the cutoff t=%.0f"
            % (-sigma, Y))

    e = f.singular_exponent or 0.0
    g = f.smooth_part()

    def damped(t: float) -> complex:
        return g(t) * cmath.exp(-s * t)

    val = 0.0 + 0.0j
    err = 0.0
    split = min(1.0, Y)
    if e != 0.0:
        re, e1 = _quad(lambda t: damped(t).real, 0.0, split, 0.05 * tol,
                       weight="alg", wvar=(e, 0.0))
        im, e2 = _quad(lambda t: damped(t).imag, 0.0, split, 0.05 * tol,
                       weight="alg", wvar=(e, 0.0))
    else:
        re, e1 = _quad(lambda t: damped(t).real, 0.0, split, 0.05 * tol)
        im, e2 = _quad(lambda t: damped(t).imag, 0.0, split, 0.05 * tol)
    val += complex(re, im)
    err += e1 + e2
    if Y > split:
        def full(t: float) -> complex:
            return f(t) * cmath.exp(-s * t)
        re, e1 = _quad(lambda t: full(t).real, split, Y, 0.05 * tol)
        im, e2 = _quad(lambda t: full(t).imag, split, Y, 0.05 * tol)
        val += complex(re, im)
        err += e1 + e2
    if err > max(tol, 1e-8 * abs(val)) * 50.0:
        raise QuadratureFailure(
            "laplace quadrature error %.2e above tolerance" % err)
    return val


# ---------------------------------------------------------------------------
# inverse Laplace on the cotangent contour

def _talbot(F: Callable[[complex], complex], t: float, M: int) -> float:
    r = 2.0 * M / (5.0 * t)
    total = 0.5 * math.exp(r * t) * complex(F(complex(r, 0.0))).real
    for j in range(1, M):
        theta = j * math.pi / M
        cot = math.cos(theta) / math.sin(theta)
        s = complex(r * theta * cot, r * theta)
        dsigma = theta + (theta * cot - 1.0) * cot
        term = cmath.exp(t * s) * complex(F(s)) * complex(1.0, dsigma)
        total += term.real
    return (r / M) * total


def numeric_inverse_laplace(F, y: float, n: int = 48,
                            tol: float = 1e-6) -> float:
    """Bromwich inversion on the fixed cotangent (Talbot) contour
    s(theta) = r theta (cot theta + i), r = 2n/(5y).

    The error estimate is the change under doubling the node count from
    n/2 to n; disagreement beyond tol raises ContourFailure.  F must be
    analytic to the right of the contour and is assumed to map conjugate
    points to conjugates (real original).
    """
    if y <= 0:
        raise DomainError("inversion point y must be positive")
    if n < 8:
        raise DomainError("node count too small to estimate anything")
    coarse = _talbot(F, y, n // 2)
    fine = _talbot(F, y, n)
    err = abs(fine - coarse)
    if err > max(tol, 1e-7 * max(1.0, abs(fine))):
        raise ContourFailure(
            "contour values disagree by %.2e under node doubling" % err)
    return fine


# ---------------------------------------------------------------------------
# half-line cosine integral

def cosine_integral(h, rho: float, x: float, tol: float = 1e-8) -> float:
    """integral_0^inf kappa^(rho-1) cos(kappa x) h(kappa) dkappa.

    The unit interval is done with the algebraic endpoint weight when
    rho < 1 leaves an integrable singularity at the origin; the tail is
    handed to the oscillatory-weight rule.  h must be real-valued and
    decay algebraically; failure of the tail rule raises SlowDecay.
    """
    if rho <= 0:
        raise DomainError("rho must be positive")
    x = abs(x)

    if abs(rho - 1.0) < 1e-14:
        head, e1 = _quad(lambda k: h(k) * math.cos(k * x), 0.0, 1.0, tol)
    else:
        head, e1 = _quad(lambda k: h(k) * math.cos(k * x), 0.0, 1.0, tol,
                         weight="alg", wvar=(rho - 1.0, 0.0))

    def alg(k: float) -> float:
        return k ** (rho - 1.0) * h(k)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if x == 0.0:
            tail, e2 = integrate.quad(alg, 1.0, np.inf, epsabs=tol,
                                      epsrel=1e-11, limit=_QUAD_LIMIT)
        else:
            tail, e2 = integrate.quad(alg, 1.0, np.inf, weight="cos",
                                      wvar=x, epsabs=tol,
                                      limit=_QUAD_LIMIT, maxp1=100)
    val = head + tail
    if e1 + e2 > max(100.0 * tol, 1e-6 * abs(val)):
        raise SlowDecay(
            "tail quadrature error %.2e; integrand decays too slowly"
            % (e1 + e2))
    return val


# ---------------------------------------------------------------------------
# high-precision separation-of-variables reference

def _ml_mp(a: float, b: float, z) -> "mp.mpc":
    """Two-parameter Mittag-Leffler series in the working precision.

    Local to the oracle on purpose; the production series lives elsewhere
    and the whole point is not to share its code paths.
    """
    z = mp.mpc(z)
    total = mp.mpc(0)
    term_scale = mp.mpf(10) ** (-mp.dps - 5)
    power = mp.mpc(1)
    # gamma arguments built in working precision: float b + a*k rounding,
    # amplified by digamma and the peak term, is exactly the noise this
    # reference exists to rule out
    am = mp.mpf(a)
    bm = mp.mpf(b)
    for k in range(0, 4000):
        total += power * mp.rgamma(bm + am * k)
        power *= z
        if abs(power) * abs(mp.rgamma(bm + am * (k + 1))) < term_scale * (1 + abs(total)):
            # one confirming extra term, then stop
            total += power * mp.rgamma(bm + am * (k + 1))
            break
    else:
        raise QuadratureFailure("reference series failed to settle")
    return total


def separation_reference(prob, x: float, y: float) -> float:
    """Reference solution for gaussian boundary data by brute-force mode
    superposition in extended precision.

    Restricted to gaussian (or zero) data and zero source, where the
    transform-space decay makes a rigorous cutoff easy.  Target accuracy
    1e-9; anything less certain raises QuadratureFailure.
    """
    if y <= 0:
        raise DomainError("y must be positive")
    for bt in (prob.f_hat, prob.g_hat):
        if bt.preset not in ("gaussian", "zero"):
            raise DomainError("reference requires gaussian or zero data")
    if not prob.source.is_zero():
        raise DomainError("reference requires a zero source")
    if prob.f_hat.is_zero() and prob.g_hat.is_zero():
        return 0.0

    alpha = prob.sym.alpha
    theta = prob.sym.theta
    mu = prob.ord.mu
    w = prob.ord.weight()
    ksq = prob.k ** 2
    quantum = prob.variant == "quantum" or prob.kind in ("wave", "wave_k")

    widths = [bt.width for bt in (prob.f_hat, prob.g_hat)
              if bt.preset == "gaussian"]
    wmin = min(widths)

    def lam(kappa):
        # pseudo-differential symbol, reimplemented locally
        if kappa == 0:
            sym = mp.mpc(0)
        else:
            mag = mp.power(abs(kappa), alpha)
            ph = mp.mpf(theta) * mp.pi / 2 * (1 if kappa > 0 else -1)
            sym = mag * mp.exp(1j * ph)
        return -(sym + ksq) if quantum else sym - ksq

    # precision: worst-case cancellation inside the series plus headroom
    kap_guess = math.sqrt(2.0 * 40.0 * math.log(10.0)) / wmin
    zmax = kap_guess ** alpha * y ** mu + ksq * y ** mu
    cancel = zmax ** (1.0 / mu) / math.log(10.0)
    dps = 25 + int(cancel) + 10
    with mp.workdps(dps):
        # cutoff: gaussian decay must beat any kernel growth by a margin
        def log10_envelope(kappa):
            grow = float(mp.re(mp.power(lam(kappa) * mp.mpf(y) ** mu,
                                        mp.mpf(1) / mu)))
            return (max(grow, 0.0) - 0.5 * (wmin * kappa) ** 2) / math.log(10.0)

        kmax = 4.0
        while log10_envelope(kmax) > -(mp.dps + 5):
            kmax *= 1.3
            if kmax > 500.0:
                raise QuadratureFailure("mode cutoff not found; kernel "
                                        "growth defeats the gaussian data")

        yp = mp.mpf(y)

        def integrand(kappa):
            L = lam(kappa) * yp ** mu
            total = mp.mpc(0)
            fh = prob.f_hat.hat(float(kappa))
            if fh != 0:
                total += yp ** (-w) * _ml_mp(mu, 1.0 - w, L) * fh
            gh = prob.g_hat.hat(float(kappa))
            if gh != 0:
                total += yp ** (1.0 - w) * _ml_mp(mu, 2.0 - w, L) * gh
            return mp.re(total * mp.exp(-1j * kappa * mp.mpf(x)))

        period = math.pi / max(abs(x), 1.0 / kmax)
        cuts = [0.0]
        step = min(period, kmax / 8.0)
        while cuts[-1] < kmax:
            cuts.append(min(cuts[-1] + step, kmax))
        val, quad_err = mp.quad(integrand, cuts, error=True)
        val = val / mp.pi
        if quad_err / mp.pi > mp.mpf(1e-9) * max(1, abs(val)):
            raise QuadratureFailure(
                "reference quadrature uncertainty %s too large" % quad_err)
        return float(val)
