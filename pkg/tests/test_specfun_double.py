import itertools
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from exact import kdf_exact, pfq_exact
from hyperhusimi.errors import DomainError, PoleError
from hyperhusimi.specfun import (
    KdFParams,
    humbert_phi1,
    hyp_pFq,
    jacobi_linearization_coeffs,
    jacobi_P,
    kampe_de_feriet,
    kdf_prop1_sides,
    laguerre_generating_check,
    prop1_support_ok,
    prudnikov_generating_sides,
)


def phi1_brute(a, b, c, w, z, order=80):
    total = 0
    for deg in range(order):
        for k in range(deg + 1):
            n = deg - k
            coef = math.prod(a + i for i in range(k + n)) * math.prod(b + i for i in range(k))
            coef /= math.prod(c + i for i in range(k + n)) * math.factorial(k) * math.factorial(n)
            total += coef * w**k * z**n
    return total


class TestHumbert:
    def test_reductions(self):
        assert humbert_phi1(1.5, 2.0, 3.5, 0.4, 0) == pytest.approx(hyp_pFq([1.5, 2.0], [3.5], 0.4), rel=1e-14)
        assert humbert_phi1(1.5, 2.0, 3.5, 0, 2.3) == pytest.approx(hyp_pFq([1.5], [3.5], 2.3), rel=1e-14)

    def test_against_brute_force(self):
        for w, z in [(0.3, 0.5), (0.45, 2.0j), (-0.6, -1.5 + 0.5j)]:
            assert_allclose(humbert_phi1(1.2, 2.5, 3.1, w, z), phi1_brute(1.2, 2.5, 3.1, w, z), rtol=1e-11)

    @pytest.mark.parametrize("a, b, c, w, y", [(3, 18, 16, 0.36, 67.0), (2, 12.5, 11.5, 0.67, 40.0), (1, 4.5, 4.5, 0.5, -30.0)])
    def test_large_imaginary_z(self, a, b, c, w, y):
        # outer terms reach ~1e19 here; summed the other way round with mpmath's own 1F1
        with mpmath.workdps(40):
            ref = mpmath.nsum(
                lambda k: mpmath.rf(a, k) * mpmath.rf(b, k) / (mpmath.rf(c, k) * mpmath.factorial(k)) * mpmath.mpf(w) ** k * mpmath.hyp1f1(a + k, c + k, 1j * y),
                [0, mpmath.inf],
            )
        assert_allclose(humbert_phi1(a, b, c, w, 1j * y), complex(ref), rtol=1e-11)

    def test_derivative_rule(self):
        a, b, c, w, z, h = 1, 2, 3, 0.4, 0.7, 1e-5
        fd = (humbert_phi1(a, b, c, w, z + h) - humbert_phi1(a, b, c, w, z - h)) / (2 * h)
        assert fd == pytest.approx(a / c * humbert_phi1(a + 1, b, c + 1, w, z), rel=1e-6)

    def test_terminating_w_axis_allows_large_w(self):
        # b = -2 cuts the w-series after two terms
        val = humbert_phi1(1.0, -2, 2.5, 3.0, 0.2)
        assert_allclose(val, phi1_brute(1.0, -2, 2.5, 3.0, 0.2, order=120), rtol=1e-12)

    def test_divergent_w(self):
        with pytest.raises(DomainError):
            humbert_phi1(1.0, 2.0, 3.0, 1.2, 0.1)


class TestKampeDeFeriet:
    def test_zero_parameters_give_one(self):
        p = KdFParams((0.0,), (2.0,), (0.0,), (1.5,), (0.5,), (2.5,))
        assert kampe_de_feriet(p, 0.7, -0.3) == 1

    def test_phi1_layout(self):
        p = KdFParams((1.3,), (2.1,), (), (3.4,), (), ())
        assert kampe_de_feriet(p, 0.3, 0.5) == pytest.approx(humbert_phi1(1.3, 2.1, 3.4, 0.3, 0.5), rel=1e-10)

    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_linearization_instance_exact(self, k):
        # m = j = 1 and BR^2 = 3: the terminating F^{2:2:2}_{2:1:1}(...|1,1)
        l, A2 = 1, 4
        top = (-2 * l + k, -A2 - 2 + 1 - k)
        p = KdFParams(top, (-1, -1), (-1, -1), (-2 * l, -2), (-A2 - 1,), (-A2 - 1,))
        ref = kdf_exact(top, (-1, -1), (-1, -1), (-2, -2), (-A2 - 1,), (-A2 - 1,), 1, 1, 1, 1)
        assert kampe_de_feriet(p, 1.0, 1.0) == pytest.approx(float(ref), rel=1e-13)

    @settings(max_examples=60)
    @given(
        st.integers(0, 4),
        st.integers(0, 4),
        st.integers(0, 4),
        st.integers(1, 9),
        st.integers(1, 9),
        st.fractions(-2, 2, max_denominator=5),
        st.fractions(-2, 2, max_denominator=5),
    )
    def test_terminating_exactness(self, na, nb, nc, e, g, x, y):
        top_a, top_b, top_c = (-na, 3), (-nb,), (-nc, Fraction(1, 2))
        bot_a, bot_b, bot_c = (e,), (g,), (Fraction(e, 2) + 1,)
        ref = kdf_exact(top_a, top_b, top_c, bot_a, bot_b, bot_c, x, y, nb, nc)
        mass = kdf_exact(top_a, top_b, top_c, bot_a, bot_b, bot_c, abs(x), abs(y), nb, nc)
        p = KdFParams(top_a, top_b, top_c, bot_a, bot_b, bot_c)
        got = kampe_de_feriet(p, float(x), float(y))
        assert got == pytest.approx(float(ref), rel=1e-13, abs=1e-13 * abs(float(mass)))

    def test_pole_before_termination(self):
        p = KdFParams((), (-3.0,), (-1.0,), (), (-2.0,), ())
        with pytest.raises(PoleError):
            kampe_de_feriet(p, 0.5, 0.5)


def prop1_exact_sides(n, a, b, c, x):
    """Exact left side and the exact full double series behind the right side."""
    lhs = 0
    for k in range(n + 1):
        f = kdf_exact((-n + k,), (a, b), (c - a, c - b), (-n, c), (), (), 1, 1, n, n)
        lhs += math.comb(n, k) * float(f) * x**k
    u = 1 / (1 + x)
    full = 0
    for s in range(-max(a, b) + 1):
        for t in range(-max(c - a, c - b) + 1):
            num = pfq_term(a, s) * pfq_term(b, s) * pfq_term(c - a, t) * pfq_term(c - b, t)
            if num == 0:
                continue
            full += float(num / (pfq_term(c, s + t) * math.factorial(s) * math.factorial(t))) * u ** (s + t)
    return lhs, (1 + x) ** n * full


def pfq_term(a, k):
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


class TestProposition1:
    def test_statement_and_proof_forms_agree(self):
        for args in [(2, -2, -1, -3, 2 + 1j), (3, 0.5, 1.5, 2.0, 1.0), (1, -1, -1, -2, 0.5), (4, -1.5, 0.5, 1.0, 5.0)]:
            _, rhs_statement = kdf_prop1_sides(*args, variant="statement")
            _, rhs_proof = kdf_prop1_sides(*args, variant="proof")
            assert_allclose(rhs_statement, rhs_proof, rtol=1e-12)

    def test_terminating_complex_example(self):
        lhs, rhs = kdf_prop1_sides(2, -2, -1, -3, 2 + 1j)
        assert_allclose(lhs, rhs, rtol=1e-12)

    def test_sides_against_exact_sums(self):
        for n, a, b, c in [(1, -1, -1, -2), (2, -2, -1, -3), (3, -2, -2, -4)]:
            x = 0.7 + 0.4j
            lhs, rhs = kdf_prop1_sides(n, a, b, c, x)
            lhs_ref, rhs_ref = prop1_exact_sides(n, a, b, c, x)
            assert_allclose(lhs, lhs_ref, rtol=1e-12)
            assert_allclose(rhs, rhs_ref, rtol=1e-12)

    def test_identity_holds_exactly_when_support_fits(self):
        # the left side keeps only the s+t <= n part of the double series
        x = 0.7 + 0.4j
        checked = 0
        for n, a, b in itertools.product(range(1, 5), range(-3, 1), range(-3, 1)):
            for c in range(-6, min(a, b) + 1):
                try:
                    lhs, rhs = kdf_prop1_sides(n, a, b, c, x)
                except PoleError:
                    continue
                agree = abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))
                assert agree == prop1_support_ok(n, a, b, c), (n, a, b, c, lhs, rhs)
                checked += 1
        assert checked > 100

    def test_counterexamples_outside_support(self):
        lhs, rhs = kdf_prop1_sides(1, -1, -1, -2, 0.5)
        assert lhs == pytest.approx(0.5, rel=1e-14)
        assert rhs == pytest.approx(5 / 6, rel=1e-14)
        lhs, rhs = kdf_prop1_sides(3, 0.5, 1.5, 2.0, 1.0)
        assert lhs == pytest.approx(12.5546875, rel=1e-14)
        assert abs(rhs - lhs) > 0.2

    def test_domain(self):
        with pytest.raises(DomainError):
            kdf_prop1_sides(2, 0.5, 1.5, 2.0, -1.0)
        with pytest.raises(DomainError):
            kdf_prop1_sides(2, -1, -1, -2, -1.0)
        with pytest.raises(DomainError):
            kdf_prop1_sides(0, -1, -1, -2, 0.5)


class TestLinearization:
    def test_degree_zero(self):
        assert jacobi_linearization_coeffs(0, 1.3, 2.4) == [pytest.approx(1.0)]

    @pytest.mark.parametrize(
        "l,a,b,points",
        [
            (1, 1.0, 2.0, [-0.5, 0.0, 0.7]),
            (2, 1.0, 3.5, [math.cos(math.pi * (2 * i + 1) / 22) for i in range(11)]),
            (3, 0.0, 7.0, [-0.9, -0.2, 0.4, 0.99]),
        ],
    )
    def test_reconstruction(self, l, a, b, points):
        c = jacobi_linearization_coeffs(l, a, b)
        assert len(c) == 2 * l + 1
        for x in points:
            recon = sum(ck * jacobi_P(k, a, b - 1, x) for k, ck in enumerate(c))
            assert recon == pytest.approx(jacobi_P(l, a, b, x) ** 2, rel=1e-10, abs=1e-12)

    def test_swapped_basis_does_not_reconstruct(self):
        c = jacobi_linearization_coeffs(2, 1.0, 3.5)
        x = 0.0
        swapped = sum(ck * jacobi_P(k, 3.5 - 1, 1.0, x) for k, ck in enumerate(c))
        assert abs(swapped - jacobi_P(2, 1.0, 3.5, x) ** 2) > 0.1


class TestGeneratingFormulas:
    def test_lambda_zero(self):
        lhs, rhs = laguerre_generating_check(1.0, 2.0, 0.3, 1.0, 0.0)
        assert lhs == 1 and rhs == 1

    def test_example(self):
        lhs, rhs = laguerre_generating_check(1, 2, 0.3, 1.0, 0.4)
        assert lhs == pytest.approx(rhs, rel=1e-8)

    def test_t_zero_is_classical(self):
        a, x, lam = 1.5, 0.8, 0.35
        lhs, rhs = laguerre_generating_check(a, 2.0, 0.0, x, lam)
        classical = (1 - lam) ** (-a - 1) * math.exp(-x * lam / (1 - lam))
        assert lhs == pytest.approx(classical, rel=1e-10)
        assert rhs == pytest.approx(classical, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            laguerre_generating_check(1, 2, 0.3, 1.0, 1.2)

    @settings(max_examples=20)
    @given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.5, 5), st.floats(-0.45, 0.45), st.floats(-0.45, 0.45))
    def test_prudnikov(self, abar, bbar, c, t, y):
        lhs, rhs = prudnikov_generating_sides(abar, bbar, c, t, y)
        assert lhs == pytest.approx(rhs, rel=1e-8, abs=1e-10)
