"""H-function specs: residue-series evaluation, parameter maps, reduction."""

import math
from dataclasses import replace

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import gamma

from fracfield.errors import (
    CoincidentPoles,
    DomainError,
    NonConvergence,
    ValidityError,
)
from fracfield.foxh import (
    HFunctionSpec,
    asymptotic_params,
    h_asymptotic,
    h_reduce,
    h_series,
    h_zero_limit,
    mellin_cosine_map,
    ml_as_h,
    power_scale,
)
from fracfield.oracle import cosine_integral
from fracfield.specfun import ml_two, wright, wright_scaled


def _solution_spec(mu, nu):
    """H_{1,1}^{1,0} spec of the point-data solution profile: lower pair
    (1,1), upper pair (1 - (1-nu)(2-mu), mu/2)."""
    c = 1.0 - (1.0 - nu) * (2.0 - mu)
    return HFunctionSpec(m=1, n=0, p=1, q=1,
                         upper=((c, mu / 2.0),), lower=((1.0, 1.0),))


# ---------------------------------------------------------------------------
# spec container


class TestSpecContainer:

    def test_index_validation(self):
        with pytest.raises(DomainError):
            HFunctionSpec(m=0, n=0, p=0, q=1, upper=(), lower=((1.0, 1.0),))
        with pytest.raises(DomainError):
            HFunctionSpec(m=1, n=2, p=1, q=1, upper=((1.0, 1.0),),
                          lower=((1.0, 1.0),))

    def test_stride_validation(self):
        with pytest.raises(DomainError):
            HFunctionSpec(m=1, n=0, p=0, q=1, upper=(), lower=((1.0, -1.0),))

    def test_json_round_trip(self):
        spec = mellin_cosine_map(ml_as_h(1.5, 0.75), 1.0, 1.8, -2.0)
        again = HFunctionSpec.from_json(spec.to_json())
        assert again == spec

    def test_series_radius(self):
        assert ml_as_h(1.5, 1.0).series_radius() == math.inf
        balanced = HFunctionSpec(m=1, n=0, p=1, q=1,
                                 upper=((0.5, 1.0),), lower=((1.0, 1.0),))
        assert balanced.m_star() == 0.0
        assert math.isfinite(balanced.series_radius())


# ---------------------------------------------------------------------------
# residue series


class TestHSeries:

    def test_ml_spec_layout(self):
        spec = ml_as_h(1.5, 1.0)
        assert (spec.m, spec.n, spec.p, spec.q) == (1, 1, 1, 2)
        assert spec.upper == ((0.0, 1.0),)
        assert spec.lower[0] == (0.0, 1.0)
        assert spec.lower[1] == (0.0, 1.5)
        assert spec.arg_scale == -1.0

    def test_ml_spec_exp_point(self):
        # arg_scale carries the sign flip, so evaluation at z gives E(z)
        got = complex(h_series(ml_as_h(1.0, 1.0), 1.0)).real
        assert_allclose(got, math.e, rtol=1e-10)

    @pytest.mark.parametrize("alpha,beta", [(1.1, 0.5), (1.5, 1.0), (2.0, 2.0)])
    def test_ml_round_trip(self, alpha, beta):
        spec = ml_as_h(alpha, beta)
        for w in (-2.0, -0.5, 0.3, 1.5, 2.9):
            got = complex(h_series(spec, w))
            want = complex(ml_two(alpha, beta, w))
            assert_allclose(got.real, want.real, rtol=1e-8, atol=1e-12)

    def test_zero_argument_positive_leading_poles(self):
        # every term carries u^{(b+k)/B} with positive exponent
        spec = HFunctionSpec(m=1, n=0, p=0, q=1, upper=(),
                             lower=((0.5, 1.0),))
        assert complex(h_series(spec, 0.0)) == 0.0

    def test_wright_correspondence(self):
        # H_{1,1}^{1,0}[u | (b,a); (1,1)] = u * wright(-a, b-a, -u)
        spec = _solution_spec(1.5, 0.5)
        a = 0.75
        for u in (0.4, 1.0, 1.8):
            got = complex(h_series(spec, u)).real
            want = u * complex(wright(-a, 0.75 - a, -u)).real
            assert_allclose(got, want, rtol=1e-10)

    def test_coincident_poles_rejected(self):
        spec = HFunctionSpec(m=2, n=0, p=0, q=2, upper=(),
                             lower=((0.0, 1.0), (0.0, 1.0)))
        with pytest.raises(CoincidentPoles):
            h_series(spec, 0.5)

    def test_divergent_region_rejected(self):
        # m_star < 0 gives zero convergence radius
        spec = HFunctionSpec(m=1, n=1, p=1, q=1,
                             upper=((0.0, 2.0),), lower=((0.0, 1.0),))
        with pytest.raises(NonConvergence):
            h_series(spec, 1.0)

    def test_zero_limit_matches_ml(self):
        spec = ml_as_h(1.5, 0.8)
        assert_allclose(complex(h_zero_limit(spec)).real, 1.0 / gamma(0.8),
                        rtol=1e-12)


# ---------------------------------------------------------------------------
# reduction and rescaling


class TestReduce:

    @staticmethod
    def _padded_pair(pair, mu=1.5, nu=0.5):
        """Solution profile with a planted pair that cancels between the
        leading lower group and the trailing upper group."""
        base = _solution_spec(mu, nu)
        padded = replace(base, m=2, p=2, q=2,
                         upper=base.upper + (pair,),
                         lower=base.lower + (pair,))
        return base, padded

    def test_cancelling_pair_removed(self):
        base, padded = self._padded_pair((1.0, 0.5))
        assert (padded.m, padded.n, padded.p, padded.q) == (2, 0, 2, 2)
        reduced = h_reduce(padded)
        assert (reduced.m, reduced.n, reduced.p, reduced.q) == (1, 0, 1, 1)
        assert reduced == base

    def test_no_pairs_is_identity(self):
        spec = ml_as_h(1.4, 1.0)
        assert h_reduce(spec) == spec

    def test_value_preserved(self):
        # this planted pair's pole family never collides with the (1,1)
        # family, so the padded spec is evaluable directly: its spurious
        # residues all vanish through the reciprocal-gamma convention
        base, padded = self._padded_pair((0.4, 0.5))
        assert h_reduce(padded) == base
        for z in (0.3, 0.9, 1.7):
            assert_allclose(complex(h_series(padded, z)),
                            complex(h_series(base, z)), rtol=1e-12)

    def test_power_scale_invariance(self):
        spec = _solution_spec(1.5, 0.5)
        for c in (0.5, 2.0):
            scaled = power_scale(spec, c)
            for z in (0.3, 1.1):
                assert_allclose(complex(h_series(scaled, z)),
                                complex(h_series(spec, z)), rtol=1e-12)

    def test_power_scale_validation(self):
        with pytest.raises(DomainError):
            power_scale(ml_as_h(1.5, 1.0), 0.0)


# ---------------------------------------------------------------------------
# cosine-transform map


class TestMellinCosineMap:

    def test_dimension_bookkeeping(self):
        spec = ml_as_h(1.5, 0.75)
        assert (spec.m, spec.n, spec.p, spec.q) == (1, 1, 1, 2)
        mapped = mellin_cosine_map(spec, 1.0, 2.0, -1.0)
        assert (mapped.m, mapped.n, mapped.p, mapped.q) == (2, 1, 3, 3)

    def test_mapped_rows(self):
        mu, nu, alpha = 1.5, 0.5, 2.0
        c = 1.0 - (1.0 - nu) * (2.0 - mu)
        mapped = mellin_cosine_map(ml_as_h(mu, c), 1.0, alpha, -1.0)
        assert mapped.upper[0] == (1.0, 1.0)
        assert mapped.upper[1] == (c, mu)
        assert mapped.upper[2] == (1.0, alpha / 2.0)
        assert mapped.lower[0] == (1.0, alpha)
        assert mapped.x_power == -1.0
        assert_allclose(mapped.prefactor.real, math.pi)

    def test_against_quadrature(self):
        """Mapped spec at x equals the direct cosine integral of the kernel.

        alpha stays away from small-denominator rationals: those put a
        genuine pole collision (logarithmic case) inside the summation
        range of the mapped spec's residue series.
        """
        mu, nu, alpha, y, x = 1.4, 0.25, 1.83, 1.0, 0.6
        c = 1.0 - (1.0 - nu) * (2.0 - mu)
        spec = ml_as_h(mu, c)
        mapped = mellin_cosine_map(spec, 1.0, alpha, -(y ** mu))

        def kernel(kap):
            return complex(ml_two(mu, c, -(y ** mu) * kap ** alpha)).real

        want = cosine_integral(kernel, 1.0, x, tol=1e-10)
        got = complex(h_series(mapped, x)).real
        assert abs(got - want) <= 1e-6

    def test_growing_kernel_rejected(self):
        # positive argument coefficient puts arg(a) on the wrong ray
        with pytest.raises(ValidityError):
            mellin_cosine_map(ml_as_h(1.5, 0.875), 1.0, 2.0, 1.0)

    def test_low_rho_rejected(self):
        with pytest.raises(ValidityError):
            mellin_cosine_map(ml_as_h(1.5, 0.875), 0.5, 2.0, -1.0)


# ---------------------------------------------------------------------------
# asymptotics


class TestAsymptotics:

    def test_constants(self):
        spec = _solution_spec(1.5, 0.5)
        par = asymptotic_params(spec)
        assert_allclose(par.m_star, 0.25, rtol=1e-14)
        assert_allclose(par.C, 0.75 ** 0.75, rtol=1e-14)

    def test_requires_m_by_q_layout(self):
        with pytest.raises(DomainError):
            asymptotic_params(ml_as_h(1.5, 1.0))

    def test_ratio_approaches_one(self):
        """Leading-order constants against the exact value at large z.

        The residue series cancels past double precision out here (peak
        term ~ exp(+0.105 z^4) against a value ~ exp(-0.105 z^4)), so the
        exact value comes through the Wright saddle-point route instead:
        H[z | (c, mu/2); (1,1)] = z * W(-mu/2, c - mu/2; -z).  Both sides
        underflow as plain doubles past z ~ 10; compare in log space.
        """
        spec = _solution_spec(1.5, 0.5)
        par = asymptotic_params(spec)
        ratios = []
        for z in (5.0, 10.0, 20.0):
            mant, logs = wright_scaled(-0.75, 0.0, -z)
            log_asym = math.log(par.B) \
                + (1.0 - par.alpha_star) / par.m_star * math.log(z) \
                - par.m_star * par.C ** (1.0 / par.m_star) \
                * z ** (1.0 / par.m_star)
            ratios.append(math.exp(log_asym - math.log(z * mant.real) - logs))
        assert abs(ratios[1] - 1.0) <= 0.05
        assert abs(ratios[2] - 1.0) <= abs(ratios[1] - 1.0)
        assert abs(ratios[1] - 1.0) <= abs(ratios[0] - 1.0)

    def test_asymptotic_value_matches_params(self):
        # where the plain double expression does not underflow the two
        # forms must agree exactly
        spec = _solution_spec(1.5, 0.5)
        par = asymptotic_params(spec)
        z = 5.0
        log_asym = math.log(par.B) \
            + (1.0 - par.alpha_star) / par.m_star * math.log(z) \
            - par.m_star * par.C ** (1.0 / par.m_star) * z ** (1.0 / par.m_star)
        assert_allclose(complex(h_asymptotic(spec, z)).real,
                        math.exp(log_asym), rtol=1e-12)

    def test_series_bound_reports_cancellation(self):
        # at z=5 the residue series result is pure roundoff; the reported
        # bound has to say so rather than bless the garbage
        spec = _solution_spec(1.5, 0.5)
        v = h_series(spec, 5.0)
        assert v.trunc_bound > abs(complex(v)) * 1e-3 or abs(complex(v)) < 1e-10
