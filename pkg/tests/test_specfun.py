"""Mittag-Leffler, Wright and Fox-Wright series evaluators.

Reference values marked "frozen" come from scripts/make_reference_values.py,
which sums the defining series independently with mpmath at 60 digits.
"""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy.special import gamma, iv

from fracfield.errors import DomainError
from fracfield.oracle import _ml_mp
from fracfield.specfun import (
    FoxWrightSpec,
    MLParams,
    SeriesValue,
    fox_wright,
    ml_four,
    ml_one,
    ml_three,
    ml_two,
    wright,
    wright_scaled,
)

# frozen references (see module docstring)
ML2_REF = -0.20287153923872816     # two-param at (1.5, 1.0), z = -8
ML3_REF = 1.754816449848804        # three-param at (1.0, 1.0, 2.0), z = 0.3
ML4_REF = 2.149279220019527        # four-param at (1.5, 1.0, 2.0, 1.2), z = 0.5
WRIGHT_REF = 0.5487378622264563    # wright at (-0.75, 0.25), z = -1.5

Z_GRID = np.linspace(-3.0, 3.0, 40)


def _re(v):
    return complex(v).real


def _ml_ref(alpha, beta, z):
    """High-precision reference; the oracle sums in the caller's working
    precision, so give it enough digits to absorb the alternating-series
    cancellation (peak term is roughly exp(|z|^(1/alpha)))."""
    need = 30 + int(abs(z) ** (1.0 / alpha) / math.log(10.0))
    with mp.workdps(need):
        return complex(_ml_mp(alpha, beta, z))


def _wright_ref(a, b, z, dps=60):
    with mp.workdps(dps):
        am, bm, zz = mp.mpf(a), mp.mpf(b), mp.mpf(z)
        total = mp.mpf(0)
        quiet = 0
        for n in range(2000):
            t = zz ** n * mp.rgamma(bm + am * n) / mp.factorial(n)
            total += t
            if abs(t) < mp.mpf(10) ** (-dps + 10) * max(1, abs(total)):
                quiet += 1
                if quiet >= 10:
                    return float(total)
            else:
                quiet = 0
        raise AssertionError("reference series did not settle")


# ---------------------------------------------------------------------------
# two-parameter family


class TestMlTwo:

    def test_frozen_reference(self):
        assert_allclose(_re(ml_two(1.5, 1.0, -8.0)), ML2_REF, rtol=1e-13)

    def test_exp_reduction(self):
        got = [_re(ml_two(1.0, 1.0, z)) for z in Z_GRID]
        assert_allclose(got, np.exp(Z_GRID), rtol=1e-10)

    def test_cos_reduction(self):
        got = [_re(ml_two(2.0, 1.0, -z * z)) for z in Z_GRID]
        assert_allclose(got, np.cos(Z_GRID), rtol=1e-10)

    def test_cosh_reduction(self):
        got = [_re(ml_two(2.0, 1.0, z * z)) for z in Z_GRID]
        assert_allclose(got, np.cosh(Z_GRID), rtol=1e-10)

    def test_sinc_reduction(self):
        # z * E_{2,2}(-z^2) = sin(z)
        got = [z * _re(ml_two(2.0, 2.0, -z * z)) for z in Z_GRID]
        assert_allclose(got, np.sin(Z_GRID), rtol=1e-10)

    def test_zero_argument(self):
        assert_allclose(_re(ml_two(1.7, 0.8, 0.0)), 1.0 / gamma(0.8), rtol=1e-14)

    def test_known_zero(self):
        # E_{2,1}(-pi^2/9) = cos(pi/3) = 1/2
        assert_allclose(_re(ml_two(2.0, 1.0, -(math.pi / 3.0) ** 2)), 0.5,
                        rtol=1e-12)

    def test_one_parameter_alias(self):
        for z in (-2.0, 0.4, 1.3):
            assert complex(ml_one(1.6, z)) == complex(ml_two(1.6, 1.0, z))

    def test_series_value_fields(self):
        v = ml_two(1.5, 1.0, -8.0)
        assert isinstance(v, SeriesValue)
        assert isinstance(v, complex)
        assert v.trunc_bound >= 0.0
        assert v.n_terms >= 1

    def test_invalid_alpha(self):
        with pytest.raises(DomainError):
            ml_two(0.0, 1.0, 1.0)

    @pytest.mark.parametrize("alpha,beta,z", [
        (1.3, 1.0, -60.0),
        (1.7, 0.6, -150.0),
        (1.9, 1.4, 90.0),
    ])
    def test_trunc_bound_honest(self, alpha, beta, z):
        """Reported bound dominates the true remainder (10x slack for the
        reference's own error)."""
        v = ml_two(alpha, beta, z)
        ref = _ml_ref(alpha, beta, z)
        err = abs(complex(v) - ref)
        assert err <= 10.0 * v.trunc_bound + 1e-12 * abs(ref)

    @pytest.mark.parametrize("z", [-2.03e19, -1e40, -1e150])
    def test_deep_negative_axis(self, z):
        """Far down the negative axis only the first algebraic term
        survives: E ~ -1/(z Gamma(beta - alpha))."""
        alpha, beta = 1.83, 0.7
        v = _re(ml_two(alpha, beta, z))
        assert math.isfinite(v)
        assert_allclose(v, -1.0 / (z * gamma(beta - alpha)), rtol=1e-10)

    def test_near_pole_truncation(self):
        """beta - alpha*k landing on a gamma pole must not truncate the
        asymptotic series early (the term is small by cancellation, not
        because the series bottomed out)."""
        v = ml_two(1.6, 0.8, -11.2)
        ref = _ml_ref(1.6, 0.8, -11.2)
        assert_allclose(complex(v), ref, rtol=1e-9)

    @settings(max_examples=25, deadline=None)
    @given(alpha=st.floats(1.05, 2.0), beta=st.floats(0.5, 1.5),
           z=st.floats(-25.0, 25.0))
    def test_against_high_precision_sum(self, alpha, beta, z):
        v = complex(ml_two(alpha, beta, z))
        ref = _ml_ref(alpha, beta, z)
        assert abs(v - ref) <= 2e-8 * max(1.0, abs(ref))

    @settings(max_examples=20, deadline=None)
    @given(alpha=st.floats(0.8, 2.0), beta=st.floats(0.5, 2.0),
           z=st.floats(-40.0, 10.0))
    def test_deterministic(self, alpha, beta, z):
        a = ml_two(alpha, beta, z)
        b = ml_two(alpha, beta, z)
        assert complex(a) == complex(b)
        assert a.trunc_bound == b.trunc_bound
        assert a.n_terms == b.n_terms


# ---------------------------------------------------------------------------
# three- and four-parameter families


class TestMlThreeFour:

    def test_frozen_reference_three(self):
        assert_allclose(_re(ml_three(1.0, 1.0, 2.0, 0.3)), ML3_REF, rtol=1e-13)

    def test_frozen_reference_four(self):
        v = ml_four(MLParams(1.5, 1.0, 2.0, 1.2), 0.5)
        assert_allclose(_re(v), ML4_REF, rtol=1e-13)

    @pytest.mark.parametrize("alpha,beta,z", [
        (1.5, 1.0, -2.0),
        (0.8, 0.9, 0.7),
        (2.0, 1.5, 1.1),
    ])
    def test_gamma_one_reduces_to_two_param(self, alpha, beta, z):
        got = _re(ml_three(alpha, beta, 1.0, z))
        want = _re(ml_two(alpha, beta, z))
        assert_allclose(got, want, rtol=1e-12)

    @pytest.mark.parametrize("alpha,beta,gamma_p,z", [
        (1.5, 1.0, 2.0, 0.5),
        (1.2, 0.8, 0.7, -1.0),
        (1.9, 1.3, 1.5, 1.4),
    ])
    def test_kappa_one_reduces_to_three_param(self, alpha, beta, gamma_p, z):
        got = _re(ml_four(MLParams(alpha, beta, gamma_p, 1.0), z))
        want = _re(ml_three(alpha, beta, gamma_p, z))
        assert_allclose(got, want, rtol=1e-12)

    def test_four_param_zero_argument(self):
        v = ml_four(MLParams(1.5, 0.7, 2.0, 1.2), 0.0)
        assert_allclose(_re(v), 1.0 / gamma(0.7), rtol=1e-14)

    def test_four_param_pochhammer_pole(self):
        # gamma + kappa_ml*n hits 0 at n = 1
        with pytest.raises(DomainError):
            ml_four(MLParams(1.5, 1.0, -0.5, 0.5), 0.3)

    def test_four_param_gamma_pole(self):
        with pytest.raises(DomainError):
            ml_four(MLParams(1.5, 1.0, 0.0, 1.2), 0.3)

    def test_params_validation(self):
        with pytest.raises(DomainError):
            MLParams(0.3, 1.0, 1.0, 1.5)  # alpha <= kappa_ml - 1 is out


# ---------------------------------------------------------------------------
# Wright function


class TestWright:

    def test_frozen_reference(self):
        assert_allclose(_re(wright(-0.75, 0.25, -1.5)), WRIGHT_REF, rtol=1e-13)

    def test_zero_argument(self):
        assert_allclose(_re(wright(-0.5, 0.5, 0.0)), 1.0 / gamma(0.5),
                        rtol=1e-14)

    @pytest.mark.parametrize("x", [0.3, 1.0, 2.5])
    def test_bessel_reduction(self, x):
        # sum x^n / (n!)^2 = I_0(2 sqrt(x))
        assert_allclose(_re(wright(1.0, 1.0, x)), iv(0, 2.0 * math.sqrt(x)),
                        rtol=1e-12)

    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
    def test_gaussian_reduction(self, x):
        # wright(-1/2, 1/2, -x) = exp(-x^2/4)/sqrt(pi)
        want = math.exp(-x * x / 4.0) / math.sqrt(math.pi)
        assert_allclose(_re(wright(-0.5, 0.5, -x)), want, rtol=1e-12)

    def test_invalid_a(self):
        with pytest.raises(DomainError):
            wright(-1.0, 0.5, 0.3)

    @pytest.mark.parametrize("x", [2.9, 3.2])
    def test_scaled_vs_reference(self, x):
        """Both sides of the series/saddle routing boundary (near
        (0.75 x)^4 / 3 = 8) against a high-precision sum."""
        mant, logs = wright_scaled(-0.75, 0.25, -x)
        got = mant.real * math.exp(logs)
        assert_allclose(got, _wright_ref(-0.75, 0.25, -x), rtol=1e-7)

    def test_scaled_deep_tail(self):
        # plain summation would cancel catastrophically here
        mant, logs = wright_scaled(-0.75, 0.25, -80.0)
        assert logs < -100.0
        assert mant.real > 0.0
        assert math.isfinite(mant.real)


# ---------------------------------------------------------------------------
# Fox-Wright


class TestFoxWright:

    def test_reduces_to_ml_two(self):
        # 1Psi1 with upper (1,1) is the two-parameter series
        spec = FoxWrightSpec(upper=((1.0, 1.0),), lower=((1.0, 1.5),))
        got = _re(fox_wright(spec, 0.7))
        assert_allclose(got, _re(ml_two(1.5, 1.0, 0.7)), rtol=1e-12)

    def test_reduces_to_wright(self):
        spec = FoxWrightSpec(upper=(), lower=((0.5, 0.8),))
        for z in (-1.2, 0.4, 2.0):
            assert_allclose(_re(fox_wright(spec, z)),
                            _re(wright(0.8, 0.5, z)), rtol=1e-13)

    def test_divergent_balance_rejected(self):
        spec = FoxWrightSpec(upper=((1.0, 2.0),), lower=((1.0, 0.5),))
        assert spec.balance() <= -1.0
        with pytest.raises(DomainError):
            fox_wright(spec, 0.5)

    def test_nonpositive_stride_rejected(self):
        with pytest.raises(DomainError):
            FoxWrightSpec(upper=((1.0, -0.5),), lower=())

    def test_zero_argument(self):
        spec = FoxWrightSpec(upper=((2.0, 1.0),), lower=((1.5, 1.0),))
        want = gamma(2.0) / gamma(1.5)
        assert_allclose(_re(fox_wright(spec, 0.0)), want, rtol=1e-13)
