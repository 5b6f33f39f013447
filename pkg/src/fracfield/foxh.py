"""Fox H-function specs, residue-series evaluation, and parameter maps.

An :class:`HFunctionSpec` is a value object: the Mellin-Barnes gamma-product
data (m, n, p, q, upper, lower) plus evaluation plumbing (prefactor,
arg_power, arg_scale, x_power) so that one spec can carry an entire
expression like ``pi * x**-1 * H[x**2 / a | ...]`` without external
bookkeeping.  Evaluating a spec at the physical argument z means

    prefactor * z**x_power * S(arg_scale * z**arg_power)

where S is the raw residue series over the poles of the leading gamma
group.  Products of gammas are accumulated in log space so that individual
factors at denominator poles cleanly zero the term.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np
from scipy.special import gammaln, gammasgn

from .errors import CoincidentPoles, DomainError, NonConvergence, ValidityError
from .specfun import SeriesValue, _is_pole

_TERM_CAP = 10_000
_EPS = float(np.finfo(float).eps)
_POLE_TOL = 1e-9

Pair = Tuple[float, float]


@dataclass(frozen=True)
class HFunctionSpec:
    """Parameter block of H^{m,n}_{p,q} with evaluation plumbing."""

    m: int
    n: int
    p: int
    q: int
    upper: Tuple[Pair, ...]
    lower: Tuple[Pair, ...]
    prefactor: complex = 1.0 + 0.0j
    arg_power: float = 1.0
    arg_scale: complex = 1.0 + 0.0j
    x_power: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple((float(a), float(A)) for a, A in self.upper))
        object.__setattr__(self, "lower", tuple((float(b), float(B)) for b, B in self.lower))
        object.__setattr__(self, "prefactor", complex(self.prefactor))
        object.__setattr__(self, "arg_scale", complex(self.arg_scale))
        if not (0 <= self.n <= self.p):
            raise DomainError("need 0 <= n <= p, got n=%d p=%d" % (self.n, self.p))
        if not (1 <= self.m <= self.q):
            raise DomainError("need 1 <= m <= q, got m=%d q=%d" % (self.m, self.q))
        if len(self.upper) != self.p or len(self.lower) != self.q:
            raise DomainError("upper/lower lengths must match p/q")
        for _, s in self.upper + self.lower:
            if s <= 0:
                raise DomainError("all gamma strides must be positive")

    # -- derived quantities -------------------------------------------------

    def m_star(self) -> float:
        return sum(B for _, B in self.lower) - sum(A for _, A in self.upper)

    def series_radius(self) -> float:
        """Convergence radius of the residue series: inf when m_star > 0,
        1/C when m_star == 0, zero otherwise."""
        ms = self.m_star()
        if ms > 1e-12:
            return math.inf
        if ms < -1e-12:
            return 0.0
        logc = sum(A * math.log(A) for _, A in self.upper) \
            - sum(B * math.log(B) for _, B in self.lower)
        return math.exp(-logc)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        out = {
            "m": self.m, "n": self.n, "p": self.p, "q": self.q,
            "upper": [[a, A] for a, A in self.upper],
            "lower": [[b, B] for b, B in self.lower],
            "prefactor": [self.prefactor.real, self.prefactor.imag],
            "arg_power": self.arg_power,
            "arg_scale": [self.arg_scale.real, self.arg_scale.imag],
        }
        if self.x_power != 0.0:
            out["x_power"] = self.x_power
        return out

    @classmethod
    def from_json(cls, d: dict) -> "HFunctionSpec":
        pf = d.get("prefactor", [1.0, 0.0])
        sc = d.get("arg_scale", [1.0, 0.0])
        return cls(
            m=int(d["m"]), n=int(d["n"]), p=int(d["p"]), q=int(d["q"]),
            upper=tuple((float(a), float(A)) for a, A in d["upper"]),
            lower=tuple((float(b), float(B)) for b, B in d["lower"]),
            prefactor=complex(pf[0], pf[1]),
            arg_power=float(d.get("arg_power", 1.0)),
            arg_scale=complex(sc[0], sc[1]),
            x_power=float(d.get("x_power", 0.0)),
        )


@dataclass(frozen=True)
class AsymptoticParams:
    """Constants of the large-argument expansion B z^{(1-alpha*)/m*} exp(-m* C^{1/m*} z^{1/m*})."""

    alpha_star: float
    m_star: float
    C: float
    B: float


# ---------------------------------------------------------------------------
# residue series

def _nearest_pole_distance(s: float, b: float, B: float) -> Tuple[int, float]:
    """Index and distance of the pole of Gamma(b - B s') closest to s."""
    k = round(B * s - b)
    if k < 0:
        k = 0
    return k, abs(s - (b + k) / B)


def h_series(spec: HFunctionSpec, z: complex) -> SeriesValue:
    """Evaluate the spec at physical argument z through the residue series.

    Raises CoincidentPoles when two leading-group poles (or a leading pole
    and a numerator gamma pole) collide within 1e-9: that is the logarithmic
    case, outside this artifact's scope.
    """
    z = complex(z)
    u = spec.arg_scale * _cpow(z, spec.arg_power)
    radius = spec.series_radius()
    if abs(u) >= radius * (1.0 - 1e-12):
        raise NonConvergence(
            "argument |u|=%g outside residue-series region (radius %g)" % (abs(u), radius))

    total = 0.0 + 0.0j
    bound = 0.0
    terms = 0
    logu = math.log(abs(u)) if u != 0 else -math.inf
    argu = cmath.phase(u) if u != 0 else 0.0

    for h in range(spec.m):
        bh, Bh = spec.lower[h]
        part, pbound, pterms = _pole_family_sum(spec, h, bh, Bh, u, logu, argu)
        total += part
        bound += pbound
        terms += pterms

    value = spec.prefactor * _cpow(z, spec.x_power) * total
    scale = abs(spec.prefactor * _cpow(z, spec.x_power))
    return SeriesValue(value, bound * scale, terms)


def _pole_family_sum(spec, h, bh, Bh, u, logu, argu):
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    quiet = 0
    prev_mag = 0.0
    mag = 0.0
    noise = 0.0
    for k in range(_TERM_CAP):
        s = (bh + k) / Bh
        t, logmass = _residue_term(spec, h, k, s, u, logu, argu)
        y = t - comp
        tot = total + y
        comp = (tot - total) - y
        total = tot
        prev_mag, mag = mag, abs(t)
        noise += _EPS * mag * (1.0 + logmass)
        if mag <= _EPS * max(abs(total), 1e-300):
            quiet += 1
            if quiet >= 3:
                if prev_mag > 0 and 0 < mag < prev_mag:
                    r = mag / prev_mag
                    b = mag * r / (1.0 - r)
                else:
                    b = 3.0 * max(mag, _EPS * abs(total))
                # rounding floor: every term carries eps * logmass noise
                # from its assembled exponent, and a cancelling sum cannot
                # be trusted below the accumulated total
                b += noise
                return total, b, k + 1
        else:
            quiet = 0
    raise NonConvergence("pole family %d did not settle within %d terms" % (h, _TERM_CAP))


def _residue_term(spec, h, k, s, u, logu, argu):
    """One residue term plus the total log mass that built it.

    The log mass (sum of |log gamma| magnitudes entering the exponent) sets
    the term's own rounding noise: the assembled exponent is accurate to
    about eps times that mass, so a term is trusted to |t|*eps*(1+mass).
    """
    # collision check against the other leading families
    for h2 in range(spec.m):
        if h2 == h:
            continue
        b2, B2 = spec.lower[h2]
        _, dist = _nearest_pole_distance(s, b2, B2)
        if dist < _POLE_TOL:
            raise CoincidentPoles(
                "pole s=%g of family %d collides with family %d" % (s, h, h2))

    lg = float(gammaln(k + 1))
    logmag = -lg - math.log(spec.lower[h][1])
    logmass = lg
    sign = 1.0 if k % 2 == 0 else -1.0

    for j in range(spec.m):
        if j == h:
            continue
        bj, Bj = spec.lower[j]
        lg = float(gammaln(bj - Bj * s))
        logmag += lg
        logmass += abs(lg)
        sign *= float(gammasgn(bj - Bj * s))
    for j in range(spec.n):
        aj, Aj = spec.upper[j]
        arg = 1.0 - aj + Aj * s
        if _is_pole(arg):
            raise CoincidentPoles(
                "numerator gamma (upper %d) has a pole at s=%g" % (j, s))
        lg = float(gammaln(arg))
        logmag += lg
        logmass += abs(lg)
        sign *= float(gammasgn(arg))
    for j in range(spec.m, spec.q):
        bj, Bj = spec.lower[j]
        arg = 1.0 - bj + Bj * s
        if _is_pole(arg):
            return 0.0 + 0.0j, 0.0  # reciprocal-gamma convention
        lg = float(gammaln(arg))
        logmag -= lg
        logmass += abs(lg)
        sign *= float(gammasgn(arg))
    for j in range(spec.n, spec.p):
        aj, Aj = spec.upper[j]
        arg = aj - Aj * s
        if _is_pole(arg):
            return 0.0 + 0.0j, 0.0
        lg = float(gammaln(arg))
        logmag -= lg
        logmass += abs(lg)
        sign *= float(gammasgn(arg))

    if u == 0:
        val = sign * math.exp(logmag) if abs(s) < 1e-14 else 0.0 + 0.0j
        return val, logmass
    logmag += s * logu
    logmass += abs(s * logu)
    if logmag < -745.0:
        return 0.0 + 0.0j, 0.0
    if logmag > 700.0:
        raise NonConvergence("residue term overflow at s=%g" % s)
    return sign * math.exp(logmag) * cmath.exp(1j * s * argu), logmass


def _cpow(z: complex, e: float) -> complex:
    if e == 0.0:
        return 1.0 + 0.0j
    if z == 0:
        return 0.0 + 0.0j
    return z ** e if isinstance(z, complex) else complex(z) ** e


def h_zero_limit(spec: HFunctionSpec) -> complex:
    """Finite limit of the evaluated spec as the physical argument z -> 0+.

    The leading small-u behavior of the raw series is coef * u^{s0} with s0
    the smallest leading-group pole; the limit of the full expression exists
    exactly when the x_power plumbing cancels that power of z.
    """
    lead = [(spec.lower[h][0] / spec.lower[h][1], h) for h in range(spec.m)]
    lead.sort()
    s0, h0 = lead[0]
    if len(lead) > 1 and lead[1][0] - s0 < _POLE_TOL:
        raise CoincidentPoles("two leading families share the smallest pole")
    if abs(spec.arg_power * s0 + spec.x_power) > 1e-12:
        raise DomainError(
            "z->0 limit is not finite and nonzero for this spec "
            "(residual power %g)" % (spec.arg_power * s0 + spec.x_power))
    coef, _ = _residue_term(spec, h0, 0, s0, 1.0 + 0.0j, 0.0, 0.0)
    return spec.prefactor * _cpow(spec.arg_scale, s0) * coef


# ---------------------------------------------------------------------------
# asymptotics

def asymptotic_params(spec: HFunctionSpec) -> AsymptoticParams:
    """Constants of the stretched-exponential large-argument form.

    Only defined for the n=0, q=m case with positive gamma-stride balance.
    """
    if spec.n != 0 or spec.q != spec.m:
        raise DomainError("asymptotic form needs n=0 and q=m")
    ms = spec.m_star()
    if ms <= 0:
        raise DomainError("asymptotic form needs sum(B)-sum(A) > 0")
    alpha_star = sum(a for a, _ in spec.upper) - sum(b for b, _ in spec.lower) \
        + 0.5 * (spec.q - spec.p + 1)
    logC = sum(A * math.log(A) for _, A in spec.upper) \
        - sum(B * math.log(B) for _, B in spec.lower)
    C = math.exp(logC)
    logB = 0.5 * (spec.m - spec.p - 1) * math.log(2.0 * math.pi) \
        + (1.0 - alpha_star) / ms * logC - 0.5 * math.log(ms) \
        + sum((0.5 - a) * math.log(A) for a, A in spec.upper) \
        + sum((b - 0.5) * math.log(B) for b, B in spec.lower[:spec.m])
    return AsymptoticParams(alpha_star, ms, C, math.exp(logB))


def h_asymptotic(spec: HFunctionSpec, z: complex) -> complex:
    """Leading large-argument behavior of the spec at physical argument z."""
    par = asymptotic_params(spec)
    u = spec.arg_scale * _cpow(complex(z), spec.arg_power)
    grow = _cpow(u, (1.0 - par.alpha_star) / par.m_star)
    expo = -par.m_star * (par.C ** (1.0 / par.m_star)) * _cpow(u, 1.0 / par.m_star)
    body = par.B * grow * (cmath.exp(expo) if expo.real > -745.0 else 0.0)
    return spec.prefactor * _cpow(complex(z), spec.x_power) * body


# ---------------------------------------------------------------------------
# parameter maps

def ml_as_h(alpha: float, beta: float) -> HFunctionSpec:
    """H-spec whose evaluation at z reproduces the two-parameter
    Mittag-Leffler function E_{alpha,beta}(z) (argument enters negated)."""
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    return HFunctionSpec(
        m=1, n=1, p=1, q=2,
        upper=((0.0, 1.0),),
        lower=((0.0, 1.0), (1.0 - beta, alpha)),
        arg_scale=-1.0 + 0.0j,
    )


def mellin_cosine_map(spec: HFunctionSpec, rho: float, delta: float,
                      a: complex) -> HFunctionSpec:
    """Spec of the cosine transform integral(kappa^{rho-1} cos(kappa x) F(a kappa^delta)) dkappa,
    where F is `spec` evaluated at a*kappa^delta.

    The result is itself an HFunctionSpec in the outer variable x: the
    transform's pi/x^rho prefactor is carried by (prefactor, x_power) and the
    argument substitution x^delta / a by (arg_power, arg_scale).

    Validity conditions are enforced as weak inequalities with a small slack
    because the solution kernels of interest sit exactly on two of the
    boundaries (where the integrals still converge conditionally); a strict
    violation raises ValidityError naming the failed condition.
    """
    if spec.x_power != 0.0:
        raise ValidityError("input spec already carries an outer-variable power")
    a = complex(a)
    if a == 0:
        raise ValidityError("zero argument coefficient")
    delta_t = delta * spec.arg_power
    a_t = spec.arg_scale * _cpow(a, spec.arg_power)
    if delta_t <= 0:
        raise ValidityError("mapped argument power must be positive")

    slack = 1e-9
    failures = []
    lead_min = min(b / B for b, B in spec.lower[:spec.m])
    if rho + delta_t * lead_min <= 1.0 - slack:
        failures.append(
            "rho + delta*min(b_j/B_j) = %g must exceed 1" % (rho + delta_t * lead_min))
    if spec.n > 0:
        top = max((aj - 1.0) / Aj for aj, Aj in spec.upper[:spec.n])
        if rho + delta_t * top >= 1.5 + slack:
            failures.append(
                "rho + delta*max((a_j-1)/A_j) = %g must be below 3/2" % (rho + delta_t * top))
    theta_star = sum(A for _, A in spec.upper[:spec.n]) \
        - sum(A for _, A in spec.upper[spec.n:]) \
        + sum(B for _, B in spec.lower[:spec.m]) \
        - sum(B for _, B in spec.lower[spec.m:])
    if abs(cmath.phase(a_t)) >= math.pi * theta_star / 2.0 + slack:
        failures.append(
            "|arg(a)| = %g must be below pi*theta*/2 = %g"
            % (abs(cmath.phase(a_t)), math.pi * theta_star / 2.0))
    if failures:
        raise ValidityError("; ".join(failures))

    upper = tuple((1.0 - b, B) for b, B in spec.lower) + (((1.0 + rho) / 2.0, delta_t / 2.0),)
    lower = ((rho, delta_t),) + tuple((1.0 - aj, Aj) for aj, Aj in spec.upper) \
        + (((1.0 + rho) / 2.0, delta_t / 2.0),)
    return HFunctionSpec(
        m=spec.n + 1, n=spec.m, p=spec.q + 1, q=spec.p + 2,
        upper=upper, lower=lower,
        prefactor=math.pi * spec.prefactor,
        arg_power=delta_t,
        arg_scale=1.0 / a_t,
        x_power=-rho,
    )


def _pairs_equal(x: Pair, y: Pair, tol: float = 1e-12) -> bool:
    return abs(x[0] - y[0]) < tol and abs(x[1] - y[1]) < tol


def h_reduce(spec: HFunctionSpec) -> HFunctionSpec:
    """Cancel matched gamma pairs between numerator and denominator groups.

    Two cancellation shapes exist: an upper pair with j <= n matching a lower
    pair with j > m, and a lower pair with j <= m matching an upper pair with
    j > n.  The returned spec evaluates identically (the Mellin integrand is
    unchanged); reduction can turn a spuriously-colliding pole layout into a
    clean simple-pole one, so it should run before h_series on mapped specs.
    """
    m, n = spec.m, spec.n
    upper = list(spec.upper)
    lower = list(spec.lower)
    changed = True
    while changed:
        changed = False
        # upper numerator (j < n) against lower denominator (j >= m)
        for i in range(n):
            hit = next((j for j in range(m, len(lower))
                        if _pairs_equal(upper[i], lower[j])), None)
            if hit is not None:
                del lower[hit]
                del upper[i]
                n -= 1
                changed = True
                break
        if changed:
            continue
        # lower numerator (j < m) against upper denominator (j >= n)
        for i in range(m):
            hit = next((j for j in range(n, len(upper))
                        if _pairs_equal(lower[i], upper[j])), None)
            if hit is not None:
                del upper[hit]
                del lower[i]
                m -= 1
                changed = True
                break
    if m < 1:
        raise DomainError("reduction removed the whole leading group")
    return replace(spec, m=m, n=n, p=len(upper), q=len(lower),
                   upper=tuple(upper), lower=tuple(lower))


def power_scale(spec: HFunctionSpec, c: float) -> HFunctionSpec:
    """Rescale all gamma strides by c; the value at any physical argument is
    unchanged (the substitution s -> s/c in the Mellin integral)."""
    if c <= 0:
        raise DomainError("scale factor must be positive")
    return replace(
        spec,
        upper=tuple((a, A * c) for a, A in spec.upper),
        lower=tuple((b, B * c) for b, B in spec.lower),
        prefactor=spec.prefactor * c,
        arg_power=spec.arg_power * c,
        arg_scale=_cpow(spec.arg_scale, c),
    )
