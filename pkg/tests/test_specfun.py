"""Special-function layer: recurrences, weighted bases, Bessel functions."""

import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.special as sps

from lagfock.errors import DomainError
from lagfock.params import PolyFamily, QuantParams, asym_coeff
from lagfock import specfun


class TestQuantParams:
    def test_derived_fields(self):
        p = QuantParams(0.4)
        assert p.c == pytest.approx(0.4 / 0.6, rel=1e-15)
        assert p.alpha_scale == pytest.approx(2 * math.sqrt(0.4) / 0.6, rel=1e-15)
        assert p.hbar == pytest.approx(0.6, rel=1e-15)

    @pytest.mark.parametrize("eps", [0.0, 1.0, -0.3, 1.7])
    def test_epsilon_range(self, eps):
        with pytest.raises(ValueError):
            QuantParams(eps)

    def test_from_alpha_roundtrip(self):
        p = QuantParams(0.37)
        q = QuantParams.from_alpha(p.alpha_scale)
        assert q.epsilon == pytest.approx(0.37, rel=1e-14)

    def test_alpha_scale_blows_up(self):
        assert QuantParams(0.9999).alpha_scale > 1e4


class TestEvalPoly:
    def test_laguerre_trivial(self):
        fam = PolyFamily.laguerre()
        assert specfun.eval_poly(fam, 0, 3.7) == 1
        assert specfun.eval_poly(fam, 1, 2.0) == pytest.approx(-1.0)

    def test_legendre_at_one(self):
        fam = PolyFamily.legendre()
        for n in range(9):
            assert specfun.eval_poly(fam, n, 1.0) == pytest.approx(1.0, abs=1e-14)

    def test_hermite_h2_origin(self):
        assert specfun.eval_poly(PolyFamily.hermite(), 2, 0.0) == pytest.approx(-2.0)

    def test_laguerre_at_zero_binomial(self):
        # L_n^a(0) = binom(n+a, n); for a = 0 this is 1.
        fam = PolyFamily.laguerre()
        for n in range(12):
            assert specfun.eval_poly(fam, n, 0.0) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("kind", ["hermite", "laguerre", "legendre"])
    def test_against_scipy(self, kind):
        fam = PolyFamily(kind)
        xs = np.linspace(-0.9, 0.9, 7) if kind == "legendre" else np.linspace(0.1, 9.0, 7)
        for n in (0, 1, 4, 9, 16):
            mine = np.array([specfun.eval_poly(fam, n, x) for x in xs])
            if kind == "hermite":
                ref = sps.eval_hermite(n, xs)
            elif kind == "laguerre":
                ref = sps.eval_laguerre(n, xs)
            else:
                ref = sps.eval_legendre(n, xs)
            np.testing.assert_allclose(mine, ref, rtol=1e-11, atol=1e-11)

    def test_generalized_laguerre_against_scipy(self):
        fam = PolyFamily.laguerre(2.5)
        xs = np.linspace(0.2, 12.0, 6)
        for n in (1, 3, 8):
            mine = np.array([specfun.eval_poly(fam, n, x) for x in xs])
            np.testing.assert_allclose(mine, sps.eval_genlaguerre(n, 2.5, xs), rtol=1e-11)

    def test_invalid_laguerre_order(self):
        with pytest.raises(DomainError):
            PolyFamily.laguerre(-1.5)

    def test_complex_argument(self):
        fam = PolyFamily.laguerre()
        z = 1.0 + 1.0j
        # L_2(z) = 1 - 2z + z^2/2
        assert specfun.eval_poly(fam, 2, z) == pytest.approx(1 - 2 * z + z * z / 2)


def _rodrigues_coeffs(kind, n, alpha=Fraction(0)):
    """Exact monomial coefficients (ascending) from the closed-form expansions."""
    if kind == "laguerre":
        # L_n^a(x) = sum_i (-1)^i / i! * prod_{j=i+1..n} (j+a) / (n-i)! x^i
        coeffs = []
        for i in range(n + 1):
            num = Fraction(1)
            for j in range(i + 1, n + 1):
                num *= j + alpha
            coeffs.append(Fraction(-1) ** i * num
                          / (math.factorial(i) * math.factorial(n - i)))
        return coeffs
    if kind == "hermite":
        coeffs = [Fraction(0)] * (n + 1)
        for m in range(n // 2 + 1):
            coeffs[n - 2 * m] = (Fraction(-1) ** m * math.factorial(n)
                                 * Fraction(2) ** (n - 2 * m)
                                 / (math.factorial(m) * math.factorial(n - 2 * m)))
        return coeffs
    # legendre via P_n(x) = 2^{-n} sum_k binom(n,k)^2 (x-1)^{n-k} (x+1)^k
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        b = Fraction(math.comb(n, k)) ** 2
        # expand (x-1)^(n-k) (x+1)^k
        for i in range(n - k + 1):
            for j in range(k + 1):
                coeffs[i + j] += (b * math.comb(n - k, i) * Fraction(-1) ** (n - k - i)
                                  * math.comb(k, j))
    return [c / Fraction(2) ** n for c in coeffs]


@pytest.mark.parametrize("kind", ["hermite", "laguerre", "legendre"])
def test_recurrence_matches_rodrigues_exactly(kind):
    """Rational cross-check: recurrences reproduce closed-form expansions, n <= 12."""
    fam = PolyFamily(kind)
    for n in range(13):
        coeffs = _rodrigues_coeffs(kind, n)
        for x in (Fraction(1, 3), Fraction(-2, 7), Fraction(5, 2)):
            direct = sum(c * x**i for i, c in enumerate(coeffs))
            assert specfun.eval_poly(fam, n, x) == direct


def test_generalized_laguerre_rodrigues_exact():
    alpha = Fraction(1, 2)
    fam = PolyFamily.laguerre(0.5)
    for n in range(9):
        coeffs = _rodrigues_coeffs("laguerre", n, alpha)
        x = Fraction(3, 4)
        direct = sum(c * x**i for i, c in enumerate(coeffs))
        assert specfun.eval_poly(fam, n, x) == direct


class TestWeighted:
    def test_l0_at_zero(self):
        assert specfun.eval_weighted_laguerre(0.0, 0, 0.0) == pytest.approx(1.0)

    def test_l0_l2_norm(self):
        # int_0^inf l_0(x)^2 dx = int e^{-x} dx = 1
        from scipy.integrate import quad
        val, _ = quad(lambda x: specfun.eval_weighted_laguerre(0.0, 0, x) ** 2, 0, 50)
        assert val == pytest.approx(1.0, rel=1e-10)

    def test_l3_value(self):
        # direct expansion: L_3(x) = 1 - 3x + 3x^2/2 - x^3/6
        x = 1.0
        l3 = math.exp(-0.5) * (1 - 3 + 1.5 - 1 / 6)
        assert specfun.eval_weighted_laguerre(0.0, 3, x) == pytest.approx(l3, rel=1e-14)

    @pytest.mark.parametrize("kind,alpha", [("laguerre", 0.0), ("laguerre", 2.5),
                                            ("hermite", 0.0), ("legendre", 0.0)])
    def test_orthonormality_gram(self, kind, alpha):
        """Gauss-quadrature Gram matrices of the first 10 basis functions = identity."""
        from lagfock.quadrature import gauss_rule
        fam = PolyFamily(kind, alpha)
        rule = gauss_rule(fam, 40)
        vals = specfun.eval_weighted_sequence(fam, 9, rule.nodes)
        gram = (vals * rule.scaled_weights) @ vals.T
        np.testing.assert_allclose(gram, np.eye(10), atol=1e-10)

    def test_weighted_matches_unweighted(self):
        fam = PolyFamily.laguerre(1.5)
        x = np.array([0.3, 2.0, 11.0])
        vals = specfun.eval_weighted_sequence(fam, 5, x)
        for n in range(6):
            direct = (np.exp(-x / 2) * x ** 0.75
                      * sps.eval_genlaguerre(n, 1.5, x)
                      / math.sqrt(math.gamma(n + 2.5) / math.factorial(n)))
            np.testing.assert_allclose(vals[n], direct, rtol=1e-11)

    def test_large_n_no_overflow(self):
        fam = PolyFamily.laguerre()
        x = np.array([800.0, 1200.0])
        vals = specfun.eval_weighted_sequence(fam, 250, x)
        assert np.all(np.isfinite(vals))


class TestGenerating:
    def test_at_z_zero(self):
        assert specfun.laguerre_generating(0.0, 1.7, 0.0) == pytest.approx(1.0)

    def test_x_zero_geometric(self):
        assert specfun.laguerre_generating(0.0, 0.0, 0.5) == pytest.approx(2.0)

    def test_partial_sum_converges(self):
        x, z = 1.0, 0.3
        fam = PolyFamily.laguerre()
        polys = specfun.eval_poly_sequence(fam, 19, x)
        partial = sum(polys[n] * z**n for n in range(20))
        closed = specfun.laguerre_generating(0.0, x, z)
        assert partial == pytest.approx(closed, abs=1e-10)

    def test_partial_sum_geometric_decay(self):
        x, z = 2.0, 0.4
        closed = specfun.laguerre_generating(0.0, x, z)
        fam = PolyFamily.laguerre()
        polys = specfun.eval_poly_sequence(fam, 40, x)
        errs = []
        for N in (10, 20, 30):
            errs.append(abs(sum(polys[n] * z**n for n in range(N)) - closed))
        # ratio of successive truncation errors ~ z^10 (envelope oscillates)
        assert errs[1] / errs[0] < 3 * z**10
        assert errs[2] / errs[1] < 3 * z**10

    def test_outside_disc(self):
        with pytest.raises(DomainError):
            specfun.laguerre_generating(0.0, 1.0, 1.0)


class TestBesselI:
    def test_at_zero(self):
        assert specfun.bessel_i(0.0, 0.0) == pytest.approx(1.0)

    def test_series_oracle_i0_2(self):
        # 30-term direct series with factorial terms
        s = sum((1.0) ** k / math.factorial(k) ** 2 for k in range(30))
        assert specfun.bessel_i(0.0, 2.0) == pytest.approx(s, rel=1e-14)

    @pytest.mark.parametrize("order", [0.0, 0.5, 1.0, 2.5])
    def test_against_scipy_real(self, order):
        xs = np.concatenate([np.linspace(0.05, 19.5, 17), np.linspace(20.5, 500, 13)])
        for x in xs:
            assert specfun.bessel_i(order, x) == pytest.approx(
                sps.iv(order, x), rel=1e-12)

    def test_against_scipy_complex(self):
        pts = [1 + 1j, 3 - 2j, 0.5j, 25 + 3j, 40 - 7j, -12 + 4j, 2j * 30]
        for z in pts:
            mine = specfun.bessel_i(0.0, z)
            ref = complex(sps.iv(0, complex(z)))
            assert mine == pytest.approx(ref, rel=5e-12, abs=1e-300)

    def test_asymptotic_ratio(self):
        # I_0(x) ~ e^x/sqrt(2 pi x) (1 + 1/8x + 9/128x^2): ratio -> 1
        for x in (50.0, 120.0, 400.0):
            approx = (math.exp(x) / math.sqrt(2 * math.pi * x)
                      * (1 + 1 / (8 * x) + 9 / (128 * x * x)))
            assert specfun.bessel_i(0.0, x) / approx == pytest.approx(1.0, abs=1e-5)

    def test_overflow_signalled(self):
        with pytest.raises(OverflowError):
            specfun.bessel_i(0.0, 800.0)

    def test_crossover_overlap(self):
        """Series and large-argument methods agree near the crossover."""
        a = specfun._asym_a_coeffs(0.0, 60)
        for x in np.linspace(16.0, 25.0, 10):
            series = (x / 2.0) ** 0 * specfun.iota(0.0, x * x / 4.0)
            asym = math.exp(x) / math.sqrt(2 * math.pi * x) * specfun._asym_sum(a, 1 / x, -1)
            assert abs(series / asym - 1.0) < 1e-11


class TestBesselK:
    def test_domain(self):
        with pytest.raises(DomainError):
            specfun.bessel_k(0.0, -1.0)
        with pytest.raises(DomainError):
            specfun.bessel_k(0.0, 0.0)

    @pytest.mark.parametrize("order", [0.0, 0.5, 1.0, 2.5])
    def test_against_scipy(self, order):
        xs = np.concatenate([np.geomspace(1e-8, 2.9, 15), np.linspace(3, 17.9, 12),
                             np.linspace(18.1, 600, 12)])
        mine = specfun.bessel_k(order, xs)
        ref = sps.kv(order, xs)
        np.testing.assert_allclose(mine, ref, rtol=2e-13)

    def test_against_mpmath_spot(self):
        import mpmath
        for order, x in [(0.0, 0.37), (0.0, 7.3), (1.0, 11.0), (2.5, 0.02), (0.5, 150.0)]:
            ref = float(mpmath.besselk(order, x))
            assert specfun.bessel_k(order, x) == pytest.approx(ref, rel=1e-12)

    def test_large_x_asymptotic(self):
        for x in (60.0, 200.0, 500.0):
            env = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
            assert specfun.bessel_k(0.0, x) / env == pytest.approx(1.0, abs=1e-2)

    def test_log_behaviour_near_zero(self):
        # K_0(x) + log(x/2) stays bounded (-> -gamma) as x -> 0+
        for x in (1e-4, 1e-7, 1e-10):
            val = specfun.bessel_k(0.0, x) + math.log(x / 2.0)
            assert abs(val + 0.5772156649015329) < 1e-6

    def test_half_order_closed_form(self):
        # K_{1/2}(x) = sqrt(pi/2x) e^{-x} exactly
        for x in (0.3, 2.0, 30.0):
            exact = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
            assert specfun.bessel_k(0.5, x) == pytest.approx(exact, rel=1e-13)

    def test_crossover_overlap(self):
        a = specfun._asym_a_coeffs(0.0, 60)
        for x in np.linspace(15.0, 24.0, 10):
            integral = specfun._bessel_k_coshint(0.0, np.array([x]))[0]
            asym = math.sqrt(math.pi / 2 / x) * math.exp(-x) * specfun._asym_sum(a, 1 / x, 1)
            assert abs(integral / asym - 1.0) < 1e-11


class TestAsymCoeff:
    def test_first_values(self):
        assert asym_coeff(0).exact == Fraction(1)
        assert asym_coeff(1).exact == Fraction(1, 8)
        assert asym_coeff(2).exact == Fraction(9, 128)

    def test_ratio_recurrence(self):
        # c_{m+1}/c_m = (m + 1/2)^2 / (2 (m+1))
        for m in range(8):
            lhs = asym_coeff(m + 1).exact / asym_coeff(m).exact
            rhs = Fraction(2 * m + 1, 2) ** 2 / (2 * (m + 1))
            assert lhs == rhs
