import math
from fractions import Fraction as F

import numpy as np
import pytest

from altmultipole.errors import DomainError
from altmultipole.specfun import (
    SeriesTruncation,
    bessel_coefficients,
    bessel_eval,
    bessel_projection_oracle,
    beta,
    double_factorial,
    kernel_sum_by_multipoles,
    kernel_sum_by_powers,
    legendre,
)


def df_oracle(n: int) -> int:
    # independent double factorial: plain product
    return math.prod(range(n, 0, -2)) if n > 0 else 1


class TestDoubleFactorial:
    def test_small_values(self):
        assert double_factorial(5) == 15
        assert double_factorial(0) == 1
        assert double_factorial(-1) == 1

    def test_against_product_oracle(self):
        for n in range(-1, 30):
            assert double_factorial(n) == df_oracle(n)
        assert double_factorial(13) == 135135

    def test_below_minus_one_rejected(self):
        for n in (-2, -3, -7):
            with pytest.raises(DomainError):
                double_factorial(n)


# explicit Legendre polynomials up to l = 6, expanded by hand
_EXPLICIT = {
    0: lambda x: 1.0,
    1: lambda x: x,
    2: lambda x: (3 * x**2 - 1) / 2,
    3: lambda x: (5 * x**3 - 3 * x) / 2,
    4: lambda x: (35 * x**4 - 30 * x**2 + 3) / 8,
    5: lambda x: (63 * x**5 - 70 * x**3 + 15 * x) / 8,
    6: lambda x: (231 * x**6 - 315 * x**4 + 105 * x**2 - 5) / 16,
}


class TestLegendre:
    def test_low_orders_match_explicit_polynomials(self):
        grid = np.linspace(-1.0, 1.0, 21)
        for l, poly in _EXPLICIT.items():
            for x in grid:
                assert legendre(l, float(x)) == pytest.approx(poly(x), abs=1e-14)

    def test_point_values(self):
        assert legendre(0, 0.7) == 1.0
        assert legendre(1, 0.3) == 0.3
        assert legendre(2, 0.5) == pytest.approx(-0.125, abs=1e-15)

    def test_bounded_by_one(self):
        grid = np.linspace(-1.0, 1.0, 101)
        for l in range(0, 12):
            assert np.all(np.abs(legendre(l, grid)) <= 1.0 + 1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            legendre(2, 1.2)
        with pytest.raises(DomainError):
            legendre(-1, 0.5)

    def test_array_input(self):
        x = np.array([-0.5, 0.0, 0.5])
        np.testing.assert_allclose(legendre(2, x), (3 * x**2 - 1) / 2, atol=1e-15)


def beta_pattern(k: int, l: int, s: int) -> F:
    # the three printed patterns, written out independently
    if k == 0:
        return F(2 * l + 1, 2 * l + 2 * s + 1)
    if k == 1:
        return F((2 * l + 1) * 2 * (s + 1), (2 * l + 2 * s + 1) * (2 * l + 2 * s - 1))
    if k == 2:
        return F(
            (2 * l + 1) * 4 * (s + 1) * (s + 2),
            (2 * l + 2 * s + 1) * (2 * l + 2 * s - 1) * (2 * l + 2 * s - 3),
        )
    raise ValueError(k)


class TestBeta:
    def test_matches_printed_patterns(self):
        for k in (0, 1, 2):
            for l in range(6):
                for s in range(11):
                    if 2 * l + 2 * s + 1 - 2 * k <= 0:
                        continue
                    assert beta(k, l, s, exact=True) == beta_pattern(k, l, s)

    def test_point_values(self):
        assert beta(0, 0, 0, exact=True) == 1
        assert beta(0, 0, 1, exact=True) == F(1, 3)
        assert beta(1, 3, 0, exact=True) == F(2, 5)

    def test_float_mode(self):
        assert beta(1, 3, 0) == pytest.approx(0.4, abs=1e-15)

    def test_nonpositive_denominator_rejected(self):
        with pytest.raises(DomainError):
            beta(2, 0, 0)
        with pytest.raises(DomainError):
            beta(0, 0, -1)


def printed_series_coefficients() -> dict[int, list[F]]:
    # the sixteen published coefficients, transcribed term by term
    def term(front_num, front_den, dfn, fact, power):
        return F(front_num, front_den) * df_oracle(dfn) / (math.factorial(fact) * 2**power)

    return {
        0: [
            F(1),
            term(1, 3, 5, 2, 2),
            term(1, 5, 9, 4, 4),
            term(1, 7, 13, 6, 6),
        ],
        1: [
            F(1, 2),
            term(1, 5, 7, 3, 3),
            term(1, 7, 11, 5, 5),
            term(1, 9, 15, 7, 7),
        ],
        2: [
            term(2, 5 * 3, 5, 2, 2),
            term(4, 7 * 5, 9, 4, 4),
            term(6, 9 * 7, 13, 6, 6),
            term(8, 11 * 9, 17, 8, 8),
        ],
        3: [
            term(2, 7 * 5, 7, 3, 3),
            term(4, 9 * 7, 11, 5, 5),
            term(6, 11 * 9, 15, 7, 7),
            term(8, 13 * 11, 19, 9, 9),
        ],
    }


class TestBesselCoefficients:
    def test_all_sixteen_printed_coefficients_exact(self):
        expected = printed_series_coefficients()
        for l, coeffs in expected.items():
            table = bessel_coefficients(l, 4)
            assert list(table.exact) == coeffs

    def test_point_values(self):
        assert bessel_coefficients(1, 1).exact == (F(1, 2),)
        assert bessel_coefficients(0, 2).coeffs == (1.0, 0.625)
        assert bessel_coefficients(2, 2).coeffs == (0.25, 0.28125)

    def test_powers(self):
        table = bessel_coefficients(3, 3)
        assert [table.power(s) for s in range(3)] == [3, 5, 7]

    def test_invalid_requests(self):
        with pytest.raises(DomainError):
            bessel_coefficients(-1, 2)
        with pytest.raises(DomainError):
            bessel_coefficients(0, 0)


class TestBesselEval:
    def test_vanishing_argument(self):
        assert bessel_eval(0, 0.0, "alpha", 7) == 1.0
        assert bessel_eval(3, 0.0, "alpha", 7) == 0.0

    def test_leading_term_at_corner(self):
        assert bessel_eval(1, math.pi / 4, "alpha", 0) == pytest.approx(0.5, abs=1e-15)

    def test_partial_sum_at_corner(self):
        # 1 + 5/8 + 63/128 + 429/1024 from the exact coefficient table
        assert bessel_eval(0, math.pi / 4, "alpha", 3) == pytest.approx(
            2597 / 1024, abs=1e-12
        )

    def test_modes_agree(self):
        for t in np.arange(0.1, 0.95, 0.1):
            for l in range(6):
                via_t = bessel_eval(l, float(t), "t", 20)
                via_alpha = bessel_eval(l, math.atan(float(t)), "alpha", 20)
                assert via_t == pytest.approx(via_alpha, abs=1e-12)

    def test_ratio_recurrence_matches_exact_coefficients(self):
        # the double-precision recurrence against the rational coefficients
        alpha = 0.31
        s2 = math.sin(2 * alpha)
        for l in range(5):
            table = bessel_coefficients(l, 21)
            direct = sum(c * s2 ** table.power(s) for s, c in enumerate(table.coeffs))
            assert bessel_eval(l, alpha, "alpha", 20) == pytest.approx(
                direct, rel=1e-13
            )

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_eval(0, 1.2, "t", 5)
        with pytest.raises(DomainError):
            bessel_eval(0, -0.1, "t", 5)
        with pytest.raises(DomainError):
            bessel_eval(0, 1.0, "alpha", 5)
        with pytest.raises(DomainError):
            bessel_eval(0, 0.5, "nope", 5)
        with pytest.raises(DomainError):
            bessel_eval(0, 0.5, "t", -1)


class TestProjectionOracle:
    def test_matches_closed_form(self):
        for l in range(9):
            for t in np.arange(0.1, 0.95, 0.1):
                t = float(t)
                closed = math.sqrt(1 + t * t) * t**l / (2 * l + 1)
                assert bessel_projection_oracle(l, t, 256) == pytest.approx(
                    closed, abs=1e-12
                )

    def test_point_values(self):
        assert bessel_projection_oracle(0, 0.0) == pytest.approx(1.0, abs=1e-14)
        assert bessel_projection_oracle(1, 0.5) == pytest.approx(
            math.sqrt(1.25) * 0.5 / 3, abs=1e-12
        )
        assert bessel_projection_oracle(2, 0.2) == pytest.approx(
            math.sqrt(1.04) * 0.04 / 5, abs=1e-12
        )

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_projection_oracle(0, 1.0)
        with pytest.raises(DomainError):
            bessel_projection_oracle(0, 0.5, n_quad=32)


class TestResummationIdentity:
    def test_power_sum_equals_multipole_sum(self):
        # regrouping x^(2s+l) over P_l must not change the partial sums
        for t in (0.1, 0.2, 0.3):
            for x in np.arange(-0.9, 0.95, 0.2):
                a = kernel_sum_by_powers(t, float(x), 30)
                b = kernel_sum_by_multipoles(t, float(x), 30)
                assert a == pytest.approx(b, abs=1e-8)

    def test_sums_converge_to_kernel_for_small_t(self):
        t, x = 0.15, 0.6
        kernel = (1 - 2 * t * x + t * t) ** -0.5
        assert kernel_sum_by_powers(t, x, 40) == pytest.approx(kernel, abs=1e-12)


class TestSeriesTruncation:
    def test_validation(self):
        SeriesTruncation(s_max=0, l_max=0)
        SeriesTruncation(s_max=200, l_max=50)
        with pytest.raises(DomainError):
            SeriesTruncation(s_max=-1, l_max=0)
        with pytest.raises(DomainError):
            SeriesTruncation(s_max=0, l_max=-1)
        with pytest.raises(DomainError):
            SeriesTruncation(s_max=201, l_max=0)
