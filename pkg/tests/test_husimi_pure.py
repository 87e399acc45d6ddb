import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from hyperhusimi.coherent import ModelParams, measure_density
from hyperhusimi.errors import DomainError
from hyperhusimi.husimi_pure import (
    PureStateSpec,
    cdf_lambda,
    cf_pure,
    cf_pure_euclid,
    cjk_coeff,
    cjk_coeff_limit,
    mean_pure,
    moments,
    q_pure,
    q_pure_euclid,
    radial_density,
    tau_factor,
    var_pure,
    zeros_of_q,
)
from hyperhusimi.specfun import gamma_ratio, hyp_pFq, jacobi_linearization_coeffs, jacobi_P
from hyperhusimi.verify import integrate_disk_radialized, integrate_halfline, integrate_radial

STD = ModelParams(1, 1.5, 1)


def oracle_cf(d, u):
    return integrate_radial(lambda lam: cmath.exp(1j * u * lam) * d(lam), d.support_end)


class TestTau:
    def test_diagonal(self):
        assert tau_factor(PureStateSpec(2, ModelParams(3, 1, 2))) == 1

    def test_pochhammer_value(self):
        assert tau_factor(PureStateSpec(2, ModelParams(1, 1.5, 0))) == pytest.approx(12.375, rel=1e-14)

    @pytest.mark.parametrize("m,j", [(1, 1), (1, 3), (2, 0)])
    def test_large_radius(self, m, j):
        s = PureStateSpec(j, ModelParams(1, 1000, m))
        p = s.params
        lead = gamma_ratio(s.lo + 1, s.hi + 1) * (2 * p.tau) ** (s.gap + 1)
        assert tau_factor(s) * p.alpha / lead == pytest.approx(1, abs=1e-3)


class TestQ:
    def test_origin(self):
        assert q_pure(PureStateSpec(1, STD), 0) == pytest.approx(1, rel=1e-14)
        assert q_pure(PureStateSpec(2, STD), 0) == 0

    def test_outside(self):
        with pytest.raises(DomainError):
            q_pure(PureStateSpec(1, STD), 1.5)

    @pytest.mark.parametrize("m,j", [(0, 0), (0, 2), (1, 0), (1, 2), (2, 2), (2, 3)])
    def test_normalized(self, m, j):
        s = PureStateSpec(j, ModelParams(1, 2, m))
        val = integrate_disk_radialized(lambda r: q_pure(s, r), lambda r: measure_density(s.params, r), s.params.R)
        assert val == pytest.approx(1, rel=1e-7)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0, 0.99), st.floats(-math.pi, math.pi), st.integers(0, 4))
    def test_radial(self, r, theta, j):
        s = PureStateSpec(j, STD)
        z = r * STD.R * cmath.exp(1j * theta)
        assert q_pure(s, z) == pytest.approx(q_pure(s, abs(z)), rel=1e-12, abs=1e-300)

    def test_euclid_base(self):
        assert q_pure_euclid(0, 0, 1.3, 0.4 + 0.2j) == pytest.approx(math.exp(-2 * 1.3 * 0.2), rel=1e-14)

    @pytest.mark.parametrize("m,j", [(1, 2), (0, 3), (2, 2)])
    def test_euclid_normalized(self, m, j):
        # (2B/pi) d^2z in polar form is 2B dlam with lam = |z|^2
        val = integrate_halfline(lambda lam: 2 * q_pure_euclid(j, m, 1.0, math.sqrt(lam)))
        assert val == pytest.approx(1, rel=1e-8)

    def test_euclid_limit_rate(self):
        z = 0.4 + 0.3j
        errs = [abs(q_pure(PureStateSpec(2, ModelParams(1, R, 1)), z) - q_pure_euclid(2, 1, 1, z)) for R in (10, 100)]
        assert errs[1] < errs[0]
        # O(1/R^2): a factor ~100 between R=10 and R=100
        assert errs[0] / errs[1] == pytest.approx(100, rel=0.05)


class TestDensity:
    def test_normalized(self):
        d = radial_density(PureStateSpec(1, STD))
        assert integrate_radial(d, d.support_end) == pytest.approx(1, rel=1e-9)

    def test_nonnegative(self):
        d = radial_density(PureStateSpec(3, ModelParams(1, 2, 2)))
        assert min(d(lam) for lam in np.linspace(0, d.support_end, 1000)) >= 0

    @pytest.mark.parametrize("j", [0, 1, 4])
    def test_beta_law_at_level_zero(self, j):
        p = ModelParams(1.2, 1.5, 0)
        d = radial_density(PureStateSpec(j, p))
        law = stats.beta(j + 1, 2 * p.tau - 1, scale=p.R**2)
        for lam in np.linspace(0.01, 0.99 * p.R**2, 25):
            assert d(lam) == pytest.approx(law.pdf(lam), rel=1e-10)

    def test_cdf(self):
        s = PureStateSpec(2, STD)
        R2 = STD.R**2
        assert cdf_lambda(s, 0) == 0
        assert cdf_lambda(s, R2) == pytest.approx(1, abs=1e-10)
        vals = [cdf_lambda(s, t) for t in np.linspace(0, R2, 50)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))
        with pytest.raises(DomainError):
            cdf_lambda(s, 1.1 * R2)

    def test_cdf_level_zero_is_beta(self):
        p = ModelParams(1.2, 1.5, 0)
        law = stats.beta(3, 2 * p.tau - 1, scale=p.R**2)
        assert cdf_lambda(PureStateSpec(2, p), 1.0) == pytest.approx(law.cdf(1.0), rel=1e-9)


class TestCoefficients:
    def test_single_when_levels_touch_zero(self):
        assert cjk_coeff(PureStateSpec(0, ModelParams(2, 1, 1)), 0) == pytest.approx(1, rel=1e-14)
        with pytest.raises(IndexError):
            cjk_coeff(PureStateSpec(0, ModelParams(2, 1, 1)), 1)

    @pytest.mark.parametrize("m,j", [(1, 1), (1, 3), (2, 2), (2, 3)])
    def test_reconstructs_jacobi_square(self, m, j):
        s = PureStateSpec(j, ModelParams(1.3, 2, m))
        a, al = s.gap, s.params.alpha
        C = [cjk_coeff(s, k) for k in range(2 * s.lo + 1)]
        assert C == pytest.approx(jacobi_linearization_coeffs(s.lo, a, al), rel=1e-12)
        for x in (-0.9, -0.3, 0.1, 0.5, 0.95):
            rebuilt = sum(c * jacobi_P(k, a, al - 1, x) for k, c in enumerate(C))
            assert rebuilt == pytest.approx(jacobi_P(s.lo, a, al, x) ** 2, rel=1e-11, abs=1e-12)

    @pytest.mark.parametrize("m,j", [(1, 1), (2, 3)])
    def test_large_radius_form(self, m, j):
        s = PureStateSpec(j, ModelParams(1, 1000, m))
        for k in range(2 * s.lo + 1):
            assert cjk_coeff(s, k) == pytest.approx(cjk_coeff_limit(s, k), rel=1e-3)


class TestCF:
    @pytest.mark.parametrize("j", [0, 1, 2, 3])
    def test_matches_oracle(self, j):
        s = PureStateSpec(j, STD)
        d = radial_density(s)
        for u in (0.5, 1, 3):
            assert abs(cf_pure(s, u) - oracle_cf(d, u)) < 1e-6

    def test_frozen_values(self):
        # regression on the resolved sign convention (e^{+i u lam})
        s = PureStateSpec(2, STD)
        assert cf_pure(s, 1.0) == pytest.approx(-0.09894740754199174 + 0.8414865337123588j, abs=1e-12)

    def test_level_zero_is_1f1(self):
        p = ModelParams(1.2, 1.5, 0)
        for j in (0, 2):
            for u in (0.3, 2.0):
                expected = hyp_pFq([j + 1], [2 * p.tau + j], 1j * u * p.R**2)
                assert cf_pure(PureStateSpec(j, p), u) == pytest.approx(expected, rel=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(-8, 8), st.integers(0, 3))
    def test_bounded_and_conjugate(self, u, j):
        s = PureStateSpec(j, STD)
        v = cf_pure(s, u)
        assert abs(v) <= 1 + 1e-12
        assert cf_pure(s, -u) == pytest.approx(v.conjugate(), abs=1e-12)
        assert cf_pure(s, 0) == pytest.approx(1, abs=1e-13)

    def test_euclid_forms(self):
        assert cf_pure_euclid(2, 1, 1.0, 0) == 1
        v = 0.35j
        assert cf_pure_euclid(3, 0, 1.0, 0.7) == pytest.approx((1 - v) ** -4, rel=1e-14)
        # the 2F1 form with the terminating sum read to k <= min(m,j)
        m, j, u = 1, 2, 0.7
        tail = sum(
            math.prod(-m + i for i in range(k)) * math.prod(-j + i for i in range(k))
            / (math.prod(-m - j + i for i in range(k)) * math.factorial(k))
            * (1 + u * u) ** k
            for k in range(min(m, j) + 1)
        )
        expected = math.factorial(m + j) / (math.factorial(m) * math.factorial(j)) * (1 - 1j * u) ** (-(m + j + 1)) * tail
        assert cf_pure_euclid(j, m, 0.5, u) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("u", [0.5, 1.5])
    def test_euclid_limit(self, u):
        errs = [abs(cf_pure(PureStateSpec(2, ModelParams(1, R, 1)), u) - cf_pure_euclid(2, 1, 1, u)) for R in (5, 20, 100)]
        assert errs[0] > errs[1] > errs[2]


class TestMoments:
    @pytest.mark.parametrize("j", [0, 3])
    def test_level_zero_closed_form(self, j):
        p = ModelParams(1.2, 1.5, 0)
        s = PureStateSpec(j, p)
        t = 2 * p.tau
        assert mean_pure(s) == pytest.approx((j + 1) * p.R**2 / (t + j), rel=1e-13)
        assert var_pure(s) == pytest.approx((j + 1) * (t - 1) * p.R**4 / ((t + j) ** 2 * (t + j + 1)), rel=1e-12)

    @pytest.mark.parametrize("m,j", [(1, 2), (1, 1), (2, 3)])
    def test_match_quadrature(self, m, j):
        s = PureStateSpec(j, ModelParams(1, 2, m) if m == 2 else STD)
        d = radial_density(s)
        L = d.support_end
        m1 = integrate_radial(lambda lam: lam * d(lam), L)
        m2 = integrate_radial(lambda lam: lam * lam * d(lam), L)
        assert mean_pure(s) == pytest.approx(m1, rel=1e-7)
        assert var_pure(s) == pytest.approx(m2 - m1 * m1, rel=1e-7)
        assert 0 < mean_pure(s) < L

    def test_cf_cross_check(self):
        mean, var = moments(PureStateSpec(2, STD))
        assert mean == pytest.approx(mean_pure(PureStateSpec(2, STD)))
        assert var > 0


class TestZeros:
    def test_none_when_min_is_zero(self):
        assert zeros_of_q(PureStateSpec(0, STD)) == []

    @pytest.mark.parametrize("m,j", [(1, 1), (1, 3), (2, 3)])
    def test_vanish(self, m, j):
        s = PureStateSpec(j, ModelParams(1, 2, m))
        radii = zeros_of_q(s)
        assert len(radii) == min(m, j)
        peak = max(q_pure(s, s.params.R * t / 1000) for t in range(1000))
        for r in radii:
            assert 0 < r < s.params.R
            assert q_pure(s, r) < 1e-10 * peak
