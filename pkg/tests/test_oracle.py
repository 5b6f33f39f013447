"""Quadrature oracles: forward/inverse Laplace, cosine transform,
separation-of-variables reference."""

import math

import pytest
from numpy.testing import assert_allclose
from scipy.special import gamma

from fracfield.fracops import HilferOrder, RieszFellerSymbol, SampledFunction
from fracfield.oracle import (
    cosine_integral,
    numeric_inverse_laplace,
    numeric_laplace,
    separation_reference,
)
from fracfield.problems import BoundaryTransform, ProblemSpec


class TestNumericLaplace:

    def test_constant(self):
        got = numeric_laplace(SampledFunction(lambda t: 1.0), 2.0)
        assert_allclose(got.real, 0.5, rtol=1e-9)

    def test_ramp(self):
        got = numeric_laplace(SampledFunction(lambda t: t), 2.0)
        assert_allclose(got.real, 0.25, rtol=1e-9)

    def test_sine(self):
        s = 1.3
        got = numeric_laplace(SampledFunction(math.sin), s)
        assert_allclose(got.real, 1.0 / (s * s + 1.0), rtol=1e-8)

    def test_singular_power(self):
        # t^{-1/2} transforms to Gamma(1/2) s^{-1/2}
        f = SampledFunction(lambda t: t ** -0.5, singular_exponent=-0.5)
        got = numeric_laplace(f, 2.0)
        assert_allclose(got.real, gamma(0.5) / math.sqrt(2.0), rtol=1e-8)

    def test_complex_s(self):
        s = 1.5 + 2.0j
        got = numeric_laplace(SampledFunction(lambda t: math.exp(-t)), s)
        want = 1.0 / (s + 1.0)
        assert_allclose([got.real, got.imag], [want.real, want.imag],
                        rtol=1e-8)

    def test_negative_abscissa(self):
        # the integral still converges left of zero while Re(s) stays
        # right of the decay rate of f
        got = numeric_laplace(SampledFunction(lambda t: math.exp(-t)), -0.5)
        assert_allclose(got.real, 2.0, rtol=1e-8)

    def test_nonconvergent_point_rejected(self):
        from fracfield.errors import TailDominance
        with pytest.raises(TailDominance):
            numeric_laplace(SampledFunction(lambda t: 1.0), -0.2)
        with pytest.raises(TailDominance):
            numeric_laplace(SampledFunction(lambda t: math.exp(-t)), -2.0)


class TestNumericInverseLaplace:

    def test_ramp(self):
        got = numeric_inverse_laplace(lambda s: 1.0 / (s * s), 3.0)
        assert_allclose(got, 3.0, rtol=1e-9)

    def test_sine(self):
        got = numeric_inverse_laplace(lambda s: 1.0 / (s * s + 1.0),
                                      math.pi / 2.0)
        assert_allclose(got, 1.0, rtol=1e-9)

    def test_round_trip(self):
        # compose the two oracles in the order that keeps both integrals
        # convergent: invert a closed-form transform, then push the
        # reconstruction back through the forward quadrature.  (The other
        # order would ask the forward integral for values left of its
        # abscissa of convergence, where it rightly refuses.)
        def F(s):
            return 1.0 / (s + 1.0)

        rebuilt = SampledFunction(
            lambda t: numeric_inverse_laplace(F, t))
        for s in (0.8, 2.0):
            got = numeric_laplace(rebuilt, s, tol=1e-7)
            assert_allclose(got.real, F(s), rtol=1e-5)
            assert abs(got.imag) < 1e-9


class TestCosineIntegral:

    def test_exponential_at_origin(self):
        got = cosine_integral(lambda k: math.exp(-k), 1.0, 0.0)
        assert_allclose(got, 1.0, rtol=1e-8)

    def test_lorentzian_pair(self):
        # integral of e^{-kappa} cos(kappa x) = 1/(1+x^2)
        for x in (0.5, 2.0):
            got = cosine_integral(lambda k: math.exp(-k), 1.0, x)
            assert_allclose(got, 1.0 / (1.0 + x * x), rtol=1e-8)

    def test_gaussian_pair(self):
        x = 1.0
        got = cosine_integral(lambda k: math.exp(-0.5 * k * k), 1.0, x)
        want = math.sqrt(math.pi / 2.0) * math.exp(-0.5 * x * x)
        assert_allclose(got, want, rtol=1e-8)

    def test_decay_at_large_x(self):
        got = cosine_integral(lambda k: math.exp(-k), 1.0, 100.0)
        assert abs(got) < 1e-3


class TestSeparationReference:

    def test_matches_dalembert(self):
        w = 0.6
        prob = ProblemSpec(
            kind="wave", variant="quantum",
            sym=RieszFellerSymbol(2.0, 0.0), ord=HilferOrder(2.0, 1.0),
            f_hat=BoundaryTransform("gaussian", width=w))

        def f(x):
            return math.exp(-0.5 * (x / w) ** 2) / (w * math.sqrt(2 * math.pi))

        for x, t in ((0.0, 0.5), (0.8, 1.1), (-1.3, 0.7)):
            got = separation_reference(prob, x, t)
            want = 0.5 * (f(x - t) + f(x + t))
            assert_allclose(got, want, rtol=1e-7, atol=1e-12)
