"""Solution machinery for the half-space / time-evolution problems.

Two independent routes exist on purpose.  solve_pointwise inverts the
transform-space kernel by direct quadrature over modes; solve_closed_form
assembles the solution from H-function specs produced by the cosine
transform map.  Tests hold the two against each other, so neither route
borrows pieces from the other.
"""

from __future__ import annotations

import cmath
import csv
import math
import warnings
from typing import List, Tuple

import numpy as np
from scipy import integrate
from scipy.special import rgamma

from .errors import (CoincidentPoles, DomainError, FracfieldError,
                     NoClosedForm, NonConvergence, NoSeriesForm, OutOfRegime,
                     QuadratureFailure)
from .foxh import (HFunctionSpec, asymptotic_params, h_reduce, h_series,
                   h_zero_limit, mellin_cosine_map, ml_as_h, power_scale)
from .fracops import prabhakar_apply, psi
from .problems import GridSpec, ProblemSpec
from .specfun import ml_two, wright_scaled

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
ASYMPTOTIC_THRESHOLD = 5.0


def lam(prob: ProblemSpec, kappa: float) -> complex:
    """Transform-space coefficient in front of the solution: the equation's
    pseudo-differential symbol folded with the sign convention and k."""
    base = psi(prob.sym, kappa)
    ksq = prob.k ** 2
    if prob.kind in ("wave", "wave_k") or prob.variant == "quantum":
        return -(base + ksq)
    return base - ksq


# ---------------------------------------------------------------------------
# transform-space kernel

def _piece_values(prob: ProblemSpec, kappa: float, y: float,
                  bucket: str) -> complex:
    """Sum of kernel pieces whose data class matches `bucket`.

    bucket 'delta' collects point data (flat transforms, algebraic decay in
    kappa); 'smooth' collects transform-decaying data; 'all' is everything.
    """
    mu = prob.ord.mu
    w = prob.ord.weight()
    L = lam(prob, kappa) * y ** mu
    total = 0.0 + 0.0j

    def wanted(preset: str) -> bool:
        if bucket == "all":
            return True
        flat = preset in ("delta", "delta_delta", "delta_power")
        return flat if bucket == "delta" else not flat

    if not prob.f_hat.is_zero() and wanted(prob.f_hat.preset):
        total += y ** (-w) * complex(ml_two(mu, 1.0 - w, L)) \
            * prob.f_hat.hat(kappa)
    if not prob.g_hat.is_zero() and wanted(prob.g_hat.preset):
        total += y ** (1.0 - w) * complex(ml_two(mu, 2.0 - w, L)) \
            * prob.g_hat.hat(kappa)
    src = prob.source
    if not src.is_zero() and wanted(src.preset):
        if src.preset == "delta_delta":
            total += y ** (mu - 1.0) * complex(ml_two(mu, mu, L))
        elif src.preset == "delta_power":
            b = src.beta
            total += y ** (mu - b) * complex(ml_two(mu, mu - b + 1.0, L))
        else:
            Lk = lam(prob, kappa)
            fn = src.fn
            re = prabhakar_apply(Lk, mu, lambda t: complex(fn(kappa, t)).real, y)
            im = prabhakar_apply(Lk, mu, lambda t: complex(fn(kappa, t)).imag, y)
            total += re + 1j * im
    return total


def fourier_kernel(prob: ProblemSpec, kappa: float, y: float) -> complex:
    """Solution's Fourier transform at mode kappa and evolution point y."""
    if y <= 0:
        raise DomainError("y must be positive")
    return _piece_values(prob, kappa, y, "all")


# ---------------------------------------------------------------------------
# pointwise inversion

def _panel_refine(integrand, lo: float, hi: float, n0: int,
                  tol: float) -> complex:
    """Fixed-order Gauss-Legendre panels on [lo, hi] with doubling."""
    if n0 > 60000:
        raise QuadratureFailure("panel count %d unaffordable" % n0)

    def sweep(n: int) -> complex:
        edges = np.linspace(lo, hi, n + 1)
        total = 0.0 + 0.0j
        for a, b in zip(edges[:-1], edges[1:]):
            mid = 0.5 * (a + b)
            half = 0.5 * (b - a)
            for t, wgt in zip(_GL_NODES, _GL_WEIGHTS):
                total += wgt * integrand(mid + half * t) * half
        return total

    val = sweep(n0)
    for _ in range(4):
        n0 *= 2
        nxt = sweep(n0)
        err = abs(nxt - val)
        val = nxt
        if err < max(0.5 * tol, 5e-12 * max(1.0, abs(val))):
            return val
    raise QuadratureFailure("panel refinement stalled at error %.2e" % err)


def _head_panels(integrand, kmax: float, n0: int, tol: float) -> complex:
    """Integral of `integrand` over [0, kmax].

    The symbol |kappa|^alpha puts a branch point at the origin (the kernel
    is C^1 there but not C^2 for non-even alpha), which drags panel
    convergence down to an algebraic rate.  Pull the first stretch through
    kappa = a t^4, smooth enough for the doubling to converge, and cover
    the rest with plain panels whose count tracks the oscillation scale.
    """
    a = min(1.0, 0.25 * kmax)

    def graded(t: float) -> complex:
        return integrand(a * t ** 4) * 4.0 * a * t ** 3

    head = _panel_refine(graded, 0.0, 1.0, 8, tol)
    body = _panel_refine(integrand, a, kmax, n0, tol)
    return head + body


def _mode_wavenumber(prob: ProblemSpec, x: float, y: float,
                     kmax: float) -> float:
    """Local oscillation scale: boundary phase |x| plus the kernel phase,
    whose stretched argument kappa^(alpha/mu) * y has wavenumber growing
    with kappa whenever alpha > mu."""
    ratio = prob.sym.alpha / prob.ord.mu
    return abs(x) + 2.0 * y * max(1.0, kmax ** (ratio - 1.0))


def _inverse_fourier(prob: ProblemSpec, x: float, y: float, bucket: str,
                     tol: float) -> complex:
    """(1/2pi) integral over both half-lines of the kernel times
    exp(-i kappa x), by fixed-order panels plus doubling."""

    def integrand(kappa: float) -> complex:
        return (_piece_values(prob, kappa, y, bucket) * cmath.exp(-1j * kappa * x)
                + _piece_values(prob, -kappa, y, bucket) * cmath.exp(1j * kappa * x))

    # cutoff march: stop once the tail envelope cannot matter
    kmax = 8.0
    while True:
        env = max(abs(integrand(kmax)), abs(integrand(0.93 * kmax)))
        if env * kmax < 0.05 * tol:
            break
        kmax *= 1.3
        if kmax > 3000.0:
            raise QuadratureFailure(
                "mode cutoff not found by kappa=3000; kernel decays too "
                "slowly (envelope %.2e)" % env)

    n0 = max(32, int(math.ceil(kmax * _mode_wavenumber(prob, x, y, kmax)
                               / math.pi)))
    return _head_panels(integrand, kmax, n0, tol) / (2.0 * math.pi)


def _delta_cutoff(prob: ProblemSpec, y: float, tol: float) -> float:
    """Mode beyond which the kernel is algebraic to within tol.

    The Mittag-Leffler kernel splits into an algebraic tail plus branch
    exponentials exp(w(kappa)); the head integral must cover every kappa
    where a branch term is still alive, so march until the least-damped
    branch is below a hundredth of the tolerance.
    """
    mu = prob.ord.mu
    if mu >= 2.0 - 1e-9:
        raise OutOfRegime(
            "point data at mu = 2 keeps a non-decaying oscillatory branch "
            "at all modes; only the closed form covers that edge")
    target = math.log(max(tol, 1e-300)) + math.log(0.01)

    def branch_ceiling(kappa: float) -> float:
        L = lam(prob, kappa) * y ** mu
        r = abs(L) ** (1.0 / mu)
        ang0 = cmath.phase(L)
        worst = -math.inf
        for n in (-1, 0, 1):
            ang = (ang0 + 2.0 * math.pi * n) / mu
            if abs(ang) > math.pi * (1.0 + 1e-12):
                continue
            worst = max(worst, r * math.cos(ang))
        return worst

    k = 8.0
    while branch_ceiling(k) > target:
        k *= 1.3
        if k > 1e5:
            raise DomainError(
                "kernel oscillation never dies out for these orders; the "
                "mode integral cannot be certified")
    return k


def _delta_inverse(prob: ProblemSpec, x: float, y: float,
                   tol: float) -> complex:
    """Inversion for flat (point-data) transforms: panels up to the branch
    cutoff, then the purely algebraic tail under the oscillatory weight."""
    kcut = _delta_cutoff(prob, y, tol)

    def integrand(kappa: float) -> complex:
        return (_piece_values(prob, kappa, y, "delta") * cmath.exp(-1j * kappa * x)
                + _piece_values(prob, -kappa, y, "delta") * cmath.exp(1j * kappa * x))

    n0 = max(32, int(math.ceil(kcut * _mode_wavenumber(prob, x, y, kcut)
                               / math.pi)))
    head = _head_panels(integrand, kcut, n0, tol) / (2.0 * math.pi)

    # tail: Re[K(kappa) e^(-i kappa x)] = Re K cos(kappa x) + Im K sin(kappa x)
    def f_re(kappa: float) -> float:
        return _piece_values(prob, kappa, y, "delta").real

    def f_im(kappa: float) -> float:
        return _piece_values(prob, kappa, y, "delta").imag

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if x == 0.0:
            t_cos, e_cos = integrate.quad(f_re, kcut, np.inf,
                                          epsabs=0.1 * tol, epsrel=1e-10,
                                          limit=400)
            t_sin, e_sin = 0.0, 0.0
        else:
            t_cos, e_cos = integrate.quad(f_re, kcut, np.inf, weight="cos",
                                          wvar=abs(x), epsabs=0.1 * tol,
                                          limit=400, maxp1=100, limlst=200)
            if prob.sym.theta != 0.0:
                t_sin, e_sin = integrate.quad(f_im, kcut, np.inf,
                                              weight="sin", wvar=abs(x),
                                              epsabs=0.1 * tol, limit=400,
                                              maxp1=100, limlst=200)
                t_sin *= math.copysign(1.0, x)
            else:
                t_sin, e_sin = 0.0, 0.0
    if e_cos + e_sin > max(10.0 * tol, 1e-7 * (abs(t_cos) + abs(t_sin))):
        raise QuadratureFailure(
            "oscillatory tail failed to settle (error %.2e)" % (e_cos + e_sin))
    return head + (t_cos + t_sin) / math.pi


def _has_bucket(prob: ProblemSpec, bucket: str) -> bool:
    flat = ("delta", "delta_delta", "delta_power")

    def match(preset):
        f = preset in flat
        return f if bucket == "delta" else not f

    if not prob.f_hat.is_zero() and match(prob.f_hat.preset):
        return True
    if not prob.g_hat.is_zero() and match(prob.g_hat.preset):
        return True
    if not prob.source.is_zero() and match(prob.source.preset):
        return True
    return False


def _grows(prob: ProblemSpec) -> bool:
    """True when the kernel's Mittag-Leffler argument has positive real
    part at large kappa (the formal, transform-growing variant)."""
    quantum = prob.kind in ("wave", "wave_k") or prob.variant == "quantum"
    return not quantum


def _pointwise_full(prob: ProblemSpec, x: float, y: float,
                    tol: float) -> Tuple[float, float]:
    if y <= 0:
        raise DomainError("y must be positive")
    total = 0.0 + 0.0j
    if _has_bucket(prob, "smooth"):
        total += _inverse_fourier(prob, x, y, "smooth", tol)
    if _has_bucket(prob, "delta"):
        if _grows(prob):
            raise DomainError(
                "point data under the growing-kernel variant has no "
                "convergent mode integral")
        total += _delta_inverse(prob, x, y, tol)
    return total.real, abs(total.imag)


def solve_pointwise(prob: ProblemSpec, x: float, y: float,
                    tol: float = 1e-8) -> float:
    """Solution value at (x, y) by direct inversion of the mode integral."""
    value, _ = _pointwise_full(prob, x, y, tol)
    return value


# ---------------------------------------------------------------------------
# closed forms

def _closed_form_pieces(prob: ProblemSpec) -> List[Tuple[float, float]]:
    """(y-exponent, second ML index) for each active piece, or NoClosedForm."""
    if prob.sym.theta != 0.0:
        raise NoClosedForm("skewed symbols fall outside the catalog")
    if prob.k != 0.0:
        raise NoClosedForm("nonzero k shifts the symbol off the catalog")
    if _grows(prob):
        raise NoClosedForm("the growing-kernel variant has no convergent "
                           "closed form")
    mu = prob.ord.mu
    w = prob.ord.weight()
    pieces = []
    for bt, (pw, c) in ((prob.f_hat, (-w, 1.0 - w)),
                        (prob.g_hat, (1.0 - w, 2.0 - w))):
        if bt.is_zero():
            continue
        if bt.preset != "delta":
            raise NoClosedForm("catalog covers point data only")
        pieces.append((pw, c))
    src = prob.source
    if not src.is_zero():
        if src.preset == "delta_delta":
            pieces.append((mu - 1.0, mu))
        elif src.preset == "delta_power":
            pieces.append((mu - src.beta, mu - src.beta + 1.0))
        else:
            raise NoClosedForm("catalog covers point sources only")
    if not pieces:
        raise NoClosedForm("all data zero; nothing to represent")
    return pieces


def _piece_h_spec(prob: ProblemSpec, c: float, y: float) -> HFunctionSpec:
    base = ml_as_h(prob.ord.mu, c)
    mapped = mellin_cosine_map(base, 1.0, prob.sym.alpha, -(y ** prob.ord.mu))
    return h_reduce(mapped)


def solve_closed_form(prob: ProblemSpec, x: float, y: float) -> float:
    """Solution at (x, y) from the H-function catalog.

    Covers the decaying-kernel variant with unskewed symbol, k = 0 and
    point data; everything else raises NoClosedForm.  A genuine pole
    collision (logarithmic case, e.g. alpha = 3/2 exactly) surfaces as
    NoClosedForm too, since the simple-pole residue series is all we carry.
    """
    if y <= 0:
        raise DomainError("y must be positive")
    total = 0.0
    for pw, c in _closed_form_pieces(prob):
        try:
            spec = _piece_h_spec(prob, c, y)
            if x == 0.0:
                s = complex(h_zero_limit(spec))
            else:
                s = complex(h_series(spec, abs(x)))
        except CoincidentPoles as exc:
            raise NoClosedForm(str(exc)) from exc
        total += (y ** pw / math.pi) * s.real
    return total


# ---------------------------------------------------------------------------
# series and asymptotic representations (alpha = 2 sheet)

def _series_applicable(prob: ProblemSpec):
    if abs(prob.sym.alpha - 2.0) > 1e-12:
        raise NoSeriesForm("power-series form exists on the alpha=2 sheet only")
    if prob.sym.theta != 0.0 or prob.k != 0.0:
        raise NoSeriesForm("series form needs an unskewed symbol and k=0")
    if _grows(prob):
        raise NoSeriesForm("series form covers the decaying-kernel variant only")
    return _closed_form_pieces_series(prob)


def _closed_form_pieces_series(prob: ProblemSpec):
    try:
        return _closed_form_pieces(prob)
    except NoClosedForm as exc:
        raise NoSeriesForm(str(exc)) from exc


def _literal_instant_series(mu: float, xt: float) -> float:
    """Power series of the instantaneous-point-source piece, coefficient
    1/Gamma(-mu j), taken literally.  For 1 < mu < 2 the terms eventually
    grow without bound at any xt > 0 and the routine refuses; at xt = 0 the
    reciprocal gamma kills every term."""
    if xt == 0.0:
        return 0.0
    logx = math.log(xt)
    total = 0.0
    grow = 0
    for j in range(1, 400):
        rg = float(rgamma(-mu * j))
        if rg == 0.0:
            continue
        logmag = j * logx - math.lgamma(j + 1.0)
        if logmag + math.log(abs(rg)) > 300.0:
            raise NonConvergence(
                "instantaneous-source series terms grow without bound "
                "(literal coefficient convention)")
        term = (-1.0) ** j * math.exp(logmag) * rg
        total += term
        if abs(term) > 1e3 * max(1.0, abs(total)):
            grow += 1
            if grow >= 3:
                raise NonConvergence(
                    "instantaneous-source series terms grow without bound "
                    "(literal coefficient convention)")
        if abs(term) < 1e-18 * max(1.0, abs(total)) and j > 5:
            return total
    raise NonConvergence("instantaneous-source series failed to settle")


def _series_piece(prob: ProblemSpec, pw: float, c: float, x: float,
                  y: float, scaled: bool):
    mu = prob.ord.mu
    xt = abs(x) / y ** (mu / 2.0)
    coeff = 0.5 * y ** (pw - mu / 2.0)
    if abs(c - mu) < 1e-12 and prob.source.preset == "delta_delta":
        # the instantaneous-source piece follows the literal coefficient
        # convention 1/Gamma(-mu j), not the factored one
        if scaled:
            raise DomainError("no scaled form for the literal instantaneous-"
                              "source series")
        return coeff * _literal_instant_series(mu, xt)

    b = c - mu / 2.0
    # wright_scaled hands the stretched-exponential tail to the saddle
    # contour; the raw series there cancels below the double-precision
    # floor and its value cannot be trusted
    mant, logs = wright_scaled(-mu / 2.0, b, -xt)
    if scaled:
        return coeff * mant, logs
    if logs < -745.0:
        return 0.0
    return coeff * float(complex(mant).real) * math.exp(logs)


def solution_series(prob: ProblemSpec, x: float, y: float) -> float:
    """Power-series representation of the solution on the alpha=2 sheet."""
    if y <= 0:
        raise DomainError("y must be positive")
    pieces = _series_applicable(prob)
    total = 0.0
    for pw, c in pieces:
        v = _series_piece(prob, pw, c, x, y, scaled=False)
        total += v
    return total


def solution_series_scaled(prob: ProblemSpec, x: float,
                           y: float) -> Tuple[float, float]:
    """(mantissa, log_scale) form of solution_series for arguments deep in
    the stretched-exponential tail; restricted to a single active piece."""
    if y <= 0:
        raise DomainError("y must be positive")
    pieces = _series_applicable(prob)
    if len(pieces) != 1:
        raise DomainError("scaled form needs exactly one active data piece")
    pw, c = pieces[0]
    return _series_piece(prob, pw, c, x, y, scaled=True)


def solution_asymptotic(prob: ProblemSpec, x: float, y: float,
                        threshold: float = ASYMPTOTIC_THRESHOLD) -> float:
    """Leading stretched-exponential behavior for large |x| / y^{mu/2}."""
    mant, logs = _asymptotic_parts(prob, x, y, threshold)
    if logs < -745.0:
        return 0.0
    return mant * math.exp(logs)


def solution_asymptotic_scaled(prob: ProblemSpec, x: float, y: float,
                               threshold: float = ASYMPTOTIC_THRESHOLD
                               ) -> Tuple[float, float]:
    return _asymptotic_parts(prob, x, y, threshold)


def _asymptotic_parts(prob: ProblemSpec, x: float, y: float,
                      threshold: float) -> Tuple[float, float]:
    if y <= 0:
        raise DomainError("y must be positive")
    pieces = _series_applicable(prob)
    if len(pieces) != 1:
        raise DomainError("asymptotic form needs exactly one active data piece")
    pw, c = pieces[0]
    mu = prob.ord.mu
    if abs(mu - 2.0) < 1e-12:
        raise OutOfRegime("no stretched-exponential regime at mu=2")
    xt = abs(x) / y ** (mu / 2.0)
    if xt < threshold:
        raise OutOfRegime(
            "scaled argument %.3g below the asymptotic threshold %.3g"
            % (xt, threshold))
    spec = power_scale(_piece_h_spec(prob, c, y), 0.5)
    par = asymptotic_params(spec)
    mant = (y ** pw / math.pi) * spec.prefactor.real / abs(x) \
        * par.B * xt ** ((1.0 - par.alpha_star) / par.m_star)
    logs = -par.m_star * par.C ** (1.0 / par.m_star) * xt ** (1.0 / par.m_star)
    return mant, logs


# ---------------------------------------------------------------------------
# grids

def solve_grid(prob: ProblemSpec, grid: GridSpec, method: str = "auto",
               tol: float = 1e-8) -> List[dict]:
    """Evaluate over the grid; one row per point, failures recorded rather
    than raised so a bad corner does not kill a long sweep."""
    if method not in ("auto", "pointwise", "closed_form", "series"):
        raise DomainError("unknown method %r" % (method,))
    rows = []
    for x, y in grid.points():
        value = math.nan
        resid = 0.0
        used = method
        flag = ""
        try:
            if method == "pointwise":
                value, resid = _pointwise_full(prob, x, y, tol)
            elif method == "closed_form":
                value = solve_closed_form(prob, x, y)
            elif method == "series":
                value = solution_series(prob, x, y)
            else:
                try:
                    value = solve_closed_form(prob, x, y)
                    used = "closed_form"
                except (NoClosedForm, NonConvergence):
                    value, resid = _pointwise_full(prob, x, y, tol)
                    used = "pointwise"
        except FracfieldError as exc:
            flag = type(exc).__name__
            used = method
        rows.append({"x": x, "y": y, "N": value, "imag_residual": resid,
                     "method": used, "error_flag": flag})
    return rows


def write_grid_csv(rows: List[dict], path: str) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["x", "y", "N", "imag_residual", "method", "error_flag"])
        for r in rows:
            wr.writerow([repr(float(r["x"])), repr(float(r["y"])),
                         repr(float(r["N"])), repr(float(r["imag_residual"])),
                         r["method"], r["error_flag"]])
