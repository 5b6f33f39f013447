"""Mittag-Leffler, Wright, and Fox-Wright series evaluators.

All evaluators are plain compensated power-series sums with a shared
truncation rule (terms below machine epsilon relative to the running sum,
three times in a row, hard cap 10k terms).  Large negative arguments of the
two-parameter Mittag-Leffler function switch to an asymptotic expansion;
deeply cancelling regimes fall back to arbitrary precision internally but
results always come back as ordinary complex values.

Terms whose gamma denominator sits at a non-positive integer contribute
zero throughout (reciprocal-gamma convention).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Tuple

import mpmath as mp
import numpy as np
from scipy import integrate
from scipy.special import gammaln, gammasgn, rgamma

from .errors import DomainError, NonConvergence

_EPS = float(np.finfo(float).eps)
_LOG_PI = math.log(math.pi)
_TERM_CAP = 10_000
# switch from power series to asymptotic expansion beyond this |z| (override per call)
DEFAULT_ASYMPTOTIC_RADIUS = 50.0
# log of the largest series term we are willing to sum in double precision
_MAX_LOG_TERM = 300.0


class SeriesValue(complex):
    """A complex value carrying its truncation-error bound.

    Behaves exactly like ``complex`` in arithmetic; ``trunc_bound`` is an
    absolute bound on the discarded tail, ``n_terms`` the number of terms
    actually summed.
    """

    trunc_bound: float
    n_terms: int

    def __new__(cls, value, trunc_bound=0.0, n_terms=0):
        obj = super().__new__(cls, value)
        obj.trunc_bound = float(trunc_bound)
        obj.n_terms = int(n_terms)
        return obj

    def __repr__(self):  # pragma: no cover - debugging aid
        return "SeriesValue(%r, trunc_bound=%.3e, n_terms=%d)" % (
            complex(self), self.trunc_bound, self.n_terms)


# ---------------------------------------------------------------------------
# parameter containers

@dataclass(frozen=True)
class MLParams:
    """Parameters of the four-parameter Mittag-Leffler family."""

    alpha: float
    beta: float
    gamma: float = 1.0
    kappa_ml: float = 1.0

    def __post_init__(self):
        if self.alpha <= 0:
            raise DomainError("alpha must be positive, got %r" % (self.alpha,))
        if self.kappa_ml <= 0:
            raise DomainError("kappa_ml must be positive, got %r" % (self.kappa_ml,))
        if self.alpha <= self.kappa_ml - 1:
            raise DomainError(
                "four-parameter series needs alpha > kappa_ml - 1 "
                "(alpha=%r, kappa_ml=%r)" % (self.alpha, self.kappa_ml))


@dataclass(frozen=True)
class FoxWrightSpec:
    """Upper/lower (coefficient, stride) pairs of a Fox-Wright series."""

    upper: Tuple[Tuple[float, float], ...] = ()
    lower: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple((float(a), float(A)) for a, A in self.upper))
        object.__setattr__(self, "lower", tuple((float(b), float(B)) for b, B in self.lower))
        for _, stride in self.upper + self.lower:
            if stride <= 0:
                raise DomainError("Fox-Wright strides must be positive")

    def balance(self) -> float:
        return sum(B for _, B in self.lower) - sum(A for _, A in self.upper)


# ---------------------------------------------------------------------------
# series driver

def _sum_series(term: Callable[[int], complex], cap: int = _TERM_CAP) -> SeriesValue:
    """Kahan-compensated sum of term(0), term(1), ... with the shared stop rule."""
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    quiet = 0
    prev_mag = 0.0
    mag = 0.0
    peak = 0.0
    for k in range(cap):
        t = term(k)
        y = t - comp
        s = total + y
        comp = (s - total) - y
        total = s
        prev_mag, mag = mag, abs(t)
        peak = max(peak, mag)
        if mag <= _EPS * max(abs(total), 1e-300):
            quiet += 1
            if quiet >= 3:
                if prev_mag > 0 and mag < prev_mag:
                    ratio = mag / prev_mag
                    bound = mag * ratio / (1.0 - ratio)
                else:
                    bound = 3.0 * max(mag, _EPS * abs(total))
                # rounding floor: cancellation against the largest term summed
                bound += _EPS * peak
                return SeriesValue(total, bound, k + 1)
        else:
            quiet = 0
    raise NonConvergence("series did not settle within %d terms" % cap)


def _is_pole(x: float, tol: float = 1e-12) -> bool:
    """True when x sits at a non-positive integer (a gamma pole)."""
    return x <= 0.5 and abs(x - round(x)) < tol


# ---------------------------------------------------------------------------
# Mittag-Leffler family

def _ml_peak_log(alpha: float, beta: float, absz: float) -> float:
    """Estimated log of the largest series term (gamma-cancellation scale)."""
    if absz <= 1.0:
        return 0.0
    kpk = max((absz ** (1.0 / alpha) - beta) / alpha, 0.0)
    if kpk < 1.0:
        return 0.0
    return kpk * math.log(absz) - float(gammaln(alpha * kpk + beta))


def _ml_series_mp(alpha: float, beta: float, z: complex, peak_log: float) -> SeriesValue:
    """Arbitrary-precision fallback for badly cancelling series."""
    dps = int(peak_log / math.log(10.0)) + 30
    with mp.workdps(dps):
        zz = mp.mpc(z)
        # build the gamma argument in working precision: rounding alpha*k+beta
        # to double first injects psi(g)*g*eps noise per term, which the peak
        # term amplifies right back above the tolerance this route promises
        am = mp.mpf(alpha)
        bm = mp.mpf(beta)
        total = mp.mpc(0)
        tol = mp.mpf(10) ** (-(mp.mp.dps - 10))
        k = 0
        quiet = 0
        while k < _TERM_CAP:
            if _is_pole(alpha * k + beta):
                t = mp.mpc(0)
            else:
                t = zz ** k / mp.gamma(am * k + bm)
            total += t
            if abs(t) <= tol * max(abs(total), mp.mpf("1e-300")):
                quiet += 1
                if quiet >= 3:
                    break
            else:
                quiet = 0
            k += 1
        else:
            raise NonConvergence("high-precision series did not settle")
        val = complex(total)
    return SeriesValue(val, abs(val) * 1e-13 + 1e-300, k + 1)


def _ml_series(alpha: float, beta: float, z: complex) -> SeriesValue:
    absz = abs(z)
    if absz > 1.0 and _ml_peak_log(alpha, beta, absz) > _MAX_LOG_TERM:
        return _ml_series_mp(alpha, beta, z, _ml_peak_log(alpha, beta, absz))

    # Running power kept exact while it fits in a double; once |z|^k
    # overflows (possible for |z| > 1 well past the peak term, where the
    # reciprocal gamma has already underflowed and the product would be nan)
    # the remaining tail is built from logs instead.
    state = {"k": 0, "zpow": 1.0 + 0.0j, "uselog": False}
    logz = math.log(absz) if absz > 0.0 else -math.inf
    phz = cmath.phase(z)

    def term(k: int) -> complex:
        while state["k"] < k:
            state["zpow"] *= z
            state["k"] += 1
            w = state["zpow"]
            if not (math.isfinite(w.real) and math.isfinite(w.imag)):
                state["uselog"] = True
        g = alpha * k + beta
        if _is_pole(g):
            return 0.0 + 0.0j
        if not state["uselog"]:
            return state["zpow"] * rgamma(g)
        logmag = k * logz - float(gammaln(g))
        if logmag < -745.0:
            return 0.0 + 0.0j
        if z.imag == 0.0:
            ph = 1.0 if (z.real >= 0.0 or k % 2 == 0) else -1.0
        else:
            ph = cmath.exp(1j * phz * k)
        return float(gammasgn(g)) * math.exp(logmag) * ph

    return _sum_series(term)


def _ml_asymptotic(alpha: float, beta: float, z: complex) -> SeriesValue:
    """Large-|z| expansion: algebraic inverse-power series plus the
    exponential branch contributions on the principal sheet.

    On the negative real axis with 1 < alpha <= 2 the two conjugate branch
    terms are oscillatory-decaying and must be kept; at alpha = 2 with
    beta in {1, 2} they reproduce the cosine/sine kernels exactly while the
    algebraic terms vanish at the gamma poles.
    """
    # Algebraic part, truncated at its smallest term.  z^-k is built as a
    # running product because integer complex powers overflow through inf/nan
    # component mixing long before the reciprocal would underflow.  Term size
    # for the truncation logic is judged by the reflection envelope
    # |z|^-k Gamma(1+alpha k-beta)/pi: the actual term carries a sin factor
    # that vanishes whenever beta-alpha*k rounds onto a gamma pole, and a
    # near-zero term must not masquerade as the series bottoming out.
    total = 0.0 + 0.0j
    k = 1
    nused = 0
    zinv = 1.0 / z
    zk = 1.0 + 0.0j
    log_absz = math.log(abs(z))
    prev_env = math.inf
    smallest_env = math.inf
    while k < 200:
        zk *= zinv
        if zk == 0.0:
            break  # |z|^-k underflowed: series exhausted at double precision
        rg = rgamma(beta - alpha * k)
        if not math.isfinite(rg):
            break
        log_env = float(gammaln(1.0 + alpha * k - beta)) \
            - k * log_absz - _LOG_PI
        if log_env > prev_env and k > 1:
            break  # envelope turned up: past the minimal term
        total += -zk * rg
        prev_env = log_env
        smallest_env = min(smallest_env, log_env)
        nused = k
        k += 1
    bound = math.exp(smallest_env) if math.isfinite(smallest_env) else 0.0

    # exponential branch terms w_n = z^{1/alpha} e^{2 pi i n / alpha}
    ang0 = cmath.phase(z)
    r = abs(z) ** (1.0 / alpha)
    kept: list = []
    for n in (-1, 0, 1):
        ang = (ang0 + 2.0 * math.pi * n) / alpha
        if abs(ang) > math.pi * (1.0 + 1e-12):
            continue
        w = r * cmath.exp(1j * ang)
        # at alpha = 1 on the negative axis the n = 0 and n = -1 angles both
        # land on +-pi and describe the same saddle; count it once
        if any(abs(w - u) <= 1e-12 * (r + 1.0) for u in kept):
            continue
        kept.append(w)
        ew = cmath.exp(w) if w.real < 700.0 else complex(math.inf)
        total += (1.0 / alpha) * (w ** (1.0 - beta)) * ew
    if cmath.isfinite(total):
        bound += _EPS * abs(total)
    return SeriesValue(total, bound, nused)


def ml_two(alpha: float, beta: float, z: complex, *,
           asymptotic_radius: float = DEFAULT_ASYMPTOTIC_RADIUS) -> SeriesValue:
    """Two-parameter Mittag-Leffler function sum_k z^k / Gamma(alpha k + beta).

    Parameters
    ----------
    alpha, beta : float
        Series parameters, alpha > 0.
    z : complex
        Argument.
    asymptotic_radius : float, optional
        |z| beyond which the asymptotic expansion replaces the power series.

    Returns
    -------
    SeriesValue
        Complex value with an attached truncation bound.
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive, got %r" % (alpha,))
    z = complex(z)
    absz = abs(z)
    # Pick the route by its reported bound.  In the transition band around
    # |z|^(1/alpha) ~ 18 the cancelling power series and the optimally
    # truncated expansion meet at a common accuracy floor; evaluate both
    # there and rescue with the arbitrary-precision sum if neither is good.
    if absz > asymptotic_radius:
        val = _ml_asymptotic(alpha, beta, z)
        if val.trunc_bound <= 1e-13 * (abs(val) + 1e-300):
            return val
        peak = _ml_peak_log(alpha, beta, absz)
        if peak <= _MAX_LOG_TERM:
            alt = _ml_series(alpha, beta, z)
            if alt.trunc_bound < val.trunc_bound:
                val = alt
            if val.trunc_bound > 1e-9 * (abs(val) + 1e-300):
                return _ml_series_mp(alpha, beta, z, peak)
        return val
    val = _ml_series(alpha, beta, z)
    if val.trunc_bound > 1e-13 * (abs(val) + 1e-300):
        alt = _ml_asymptotic(alpha, beta, z)
        if alt.trunc_bound < val.trunc_bound:
            val = alt
        if val.trunc_bound > 1e-9 * (abs(val) + 1e-300):
            peak = _ml_peak_log(alpha, beta, absz)
            if peak <= _MAX_LOG_TERM:
                return _ml_series_mp(alpha, beta, z, peak)
    return val


def ml_one(alpha: float, z: complex, *,
           asymptotic_radius: float = DEFAULT_ASYMPTOTIC_RADIUS) -> SeriesValue:
    """One-parameter Mittag-Leffler function; equals ml_two(alpha, 1, z)."""
    return ml_two(alpha, 1.0, z, asymptotic_radius=asymptotic_radius)


def ml_three(alpha: float, beta: float, gamma: float, z: complex) -> SeriesValue:
    """Prabhakar three-parameter series sum_k (gamma)_k z^k / (Gamma(alpha k + beta) k!)."""
    if alpha <= 0:
        raise DomainError("alpha must be positive, got %r" % (alpha,))
    z = complex(z)

    # running Pochhammer and factorial kept per closure call; rebuild on demand
    state = {"k": 0, "coef": 1.0}

    def term(k: int) -> complex:
        # coef = (gamma)_k / k!
        while state["k"] < k:
            j = state["k"]
            state["coef"] *= (gamma + j) / (j + 1.0)
            state["k"] += 1
        return state["coef"] * (z ** k) * rgamma(alpha * k + beta)

    return _sum_series(term)


def ml_four(params: MLParams, z: complex) -> SeriesValue:
    """Four-parameter Mittag-Leffler series with Pochhammer stride kappa_ml.

    The weight (gamma)_{kappa_ml * n} is evaluated through log-gamma; a pole
    of the numerator gamma (possible for non-positive gamma) is rejected as a
    DomainError since the series coefficient is then unbounded.
    """
    z = complex(z)
    a, b, g, kap = params.alpha, params.beta, params.gamma, params.kappa_ml
    if _is_pole(g):
        raise DomainError("gamma at a non-positive integer has no finite Pochhammer weight")
    lg = float(gammaln(g))
    sg = float(gammasgn(g))

    def term(n: int) -> complex:
        num = g + kap * n
        if _is_pole(num):
            raise DomainError("Pochhammer numerator gamma pole at n=%d" % n)
        gd = b + a * n
        if _is_pole(gd):
            return 0.0 + 0.0j
        logmag = float(gammaln(num)) - lg - float(gammaln(n + 1)) - float(gammaln(gd))
        sign = float(gammasgn(num)) * sg * float(gammasgn(gd))
        if logmag > _MAX_LOG_TERM:
            raise NonConvergence("four-parameter term overflow at n=%d" % n)
        return sign * math.exp(logmag) * (z ** n)

    return _sum_series(term)


# ---------------------------------------------------------------------------
# Wright and Fox-Wright

def wright(a: float, b: float, z: complex) -> SeriesValue:
    """Wright function sum_n z^n / (Gamma(b + n a) n!), a > -1."""
    if a <= -1:
        raise DomainError("wright needs a > -1, got %r" % (a,))
    z = complex(z)
    if z == 0:
        return SeriesValue(complex(rgamma(b)), 0.0, 1)
    logz = math.log(abs(z))
    phz = cmath.phase(z)
    real_axis = z.imag == 0.0

    def term(n: int) -> complex:
        g = b + n * a
        if _is_pole(g):
            return 0.0 + 0.0j
        logmag = n * logz - float(gammaln(n + 1)) - float(gammaln(g))
        if logmag < -745.0:
            return 0.0 + 0.0j
        if logmag > _MAX_LOG_TERM:
            raise NonConvergence("wright term overflow at n=%d" % n)
        if real_axis:  # keep real arguments exactly real
            ph = 1.0 if (z.real > 0 or n % 2 == 0) else -1.0
        elif phz != 0.0:
            ph = cmath.exp(1j * phz * n)
        else:
            ph = 1.0
        return float(gammasgn(g)) * math.exp(logmag) * ph

    return _sum_series(term)


def wright_scaled(a: float, b: float, z: complex) -> Tuple[complex, float]:
    """Wright function as (mantissa, log_scale): value = mantissa * exp(log_scale).

    For strongly negative real z with -1 < a < 0 the direct series cancels
    catastrophically; there the value is recovered from the steepest-descent
    contour through the saddle of the integrand exp(u - x u^sigma) u^{-b}
    (sigma = -a, x = -z), with the exponentially small factor returned
    separately so callers can keep it at full accuracy.
    """
    z = complex(z)
    if -1.0 < a < 0.0 and z.imag == 0.0 and z.real < 0.0:
        sigma = -a
        x = -z.real
        tstar = (sigma * x) ** (1.0 / (1.0 - sigma))
        esad = tstar * (1.0 - sigma) / sigma
        if esad > 8.0:
            return _wright_saddle(sigma, b, x, tstar, esad), -esad
    return complex(wright(a, b, z)), 0.0


def _wright_saddle(sigma: float, b: float, x: float, tstar: float, esad: float) -> complex:
    """Quadrature of the saddle-point contour (vertical line through t*)."""
    scale = math.sqrt(tstar / (1.0 - sigma))  # descent width ~ sqrt(2/phi'')

    def integrand(u: float) -> float:
        v = u * scale
        w = complex(tstar, v)
        phase = w - x * (w ** sigma) + esad  # phi(w) - phi(t*)
        val = cmath.exp(phase) * (w ** (-b))
        return val.real

    est, err = integrate.quad(integrand, 0.0, np.inf, epsabs=1e-13, epsrel=1e-11, limit=400)
    return complex(est * scale / math.pi)


def fox_wright(spec: FoxWrightSpec, z: complex) -> SeriesValue:
    """Fox-Wright series sum_n prod Gamma(a_j + n A_j) / prod Gamma(b_j + n B_j) z^n / n!."""
    if spec.balance() <= -1.0 + 1e-12:
        raise DomainError(
            "divergent parameter balance: sum(B) - sum(A) = %g <= -1" % spec.balance())
    z = complex(z)

    def term(n: int) -> complex:
        logmag = -float(gammaln(n + 1))
        sign = 1.0
        for aj, Aj in spec.upper:
            arg = aj + n * Aj
            if _is_pole(arg):
                raise DomainError("Fox-Wright numerator gamma pole at n=%d" % n)
            logmag += float(gammaln(arg))
            sign *= float(gammasgn(arg))
        for bj, Bj in spec.lower:
            arg = bj + n * Bj
            if _is_pole(arg):
                return 0.0 + 0.0j
            logmag -= float(gammaln(arg))
            sign *= float(gammasgn(arg))
        if logmag + n * math.log(max(abs(z), 1e-300)) > _MAX_LOG_TERM:
            raise NonConvergence("fox_wright term overflow at n=%d" % n)
        return sign * math.exp(logmag) * (z ** n)

    return _sum_series(term)
