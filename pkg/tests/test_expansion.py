import json
import math

import numpy as np
import pytest

from altmultipole.errors import ConfigurationError, DomainError, SingularityError
from altmultipole.expansion import (
    Geometry,
    alternative_multipole,
    classical_multipole,
    direct_coulomb,
    error_scan,
    exponential_form,
    first_term_series,
    hyperradial,
)
from altmultipole.specfun import SeriesTruncation


class TestGeometry:
    def test_derived_quantities(self):
        g = Geometry(2.0, 1.0, 0.3)
        assert g.r_less == 1.0 and g.r_greater == 2.0
        assert g.t == 0.5
        assert g.alpha == math.atan(0.5)

    def test_swap_leaves_t_unchanged(self):
        a = Geometry(1.7, 0.4, -0.2)
        b = Geometry(0.4, 1.7, -0.2)
        assert a.t == b.t and a.alpha == b.alpha

    def test_validation(self):
        with pytest.raises(DomainError):
            Geometry(0.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            Geometry(1.0, -1.0, 0.0)
        with pytest.raises(DomainError):
            Geometry(1.0, 1.0, 1.5)


class TestDirect:
    def test_point_values(self):
        assert direct_coulomb(Geometry(1, 1, 0.0)) == pytest.approx(
            1 / math.sqrt(2), abs=1e-15
        )
        assert direct_coulomb(Geometry(1, 0.2, 0.5)) == pytest.approx(
            1 / math.sqrt(0.84), abs=1e-14
        )
        assert direct_coulomb(Geometry(3, 4, 0.0)) == pytest.approx(0.2, abs=1e-16)

    def test_coalescence(self):
        with pytest.raises(SingularityError):
            direct_coulomb(Geometry(1.0, 1.0, 1.0))


class TestClassical:
    def test_leading_term(self):
        assert classical_multipole(Geometry(1, 0.2, 0.5), 0) == 1.0

    def test_hand_partial_sum(self):
        # sum_{l<=5} 0.2^l P_l(0.5) with the explicit polynomial values
        pl = [1, 0.5, -0.125, -0.4375, -0.2890625, 0.08984375]
        expected = sum(0.2**l * pl[l] for l in range(6))
        assert classical_multipole(Geometry(1, 0.2, 0.5), 5) == pytest.approx(
            expected, abs=1e-14
        )

    def test_converges_to_direct(self):
        g = Geometry(1, 0.2, 0.5)
        assert classical_multipole(g, 60) == pytest.approx(
            direct_coulomb(g), abs=1e-9
        )

    def test_geometric_tail_bound(self):
        for t in (0.2, 0.5, 0.8):
            for x in (-0.9, 0.0, 0.9):
                g = Geometry(1.0, t, x)
                d = direct_coulomb(g)
                for l_max in (5, 10, 20):
                    bound = t ** (l_max + 1) / (1 - t) / g.r_greater
                    assert abs(classical_multipole(g, l_max) - d) <= bound + 1e-15

    def test_coalescence_rejected(self):
        with pytest.raises(SingularityError):
            classical_multipole(Geometry(1.0, 1.0, 1.0), 10)


class TestAlternative:
    def test_tiny_inner_radius(self):
        g = Geometry(1.0, 1e-12, 0.37)
        value = alternative_multipole(g, SeriesTruncation(s_max=15, l_max=15))
        assert value == pytest.approx(1.0, abs=1e-11)

    def test_leading_term_at_equal_radii(self):
        g = Geometry(1.0, 1.0, 0.0)
        value = alternative_multipole(g, SeriesTruncation(s_max=0, l_max=0))
        assert value == pytest.approx(1 / math.sqrt(2), abs=1e-15)

    def test_partial_sum_recorded_without_convergence_claim(self):
        # the truncated series lands where it lands; the scan only records
        # its distance from the direct value
        g = Geometry(1, 0.2, 0.5)
        value = alternative_multipole(g, SeriesTruncation(s_max=20, l_max=20))
        report = error_scan([0.2], [0.5], [SeriesTruncation(s_max=20, l_max=20)])
        row = next(r for r in report.method_rows if r.method == "alternative")
        assert row.value == value
        assert row.rel_error == abs(value - direct_coulomb(g)) / direct_coulomb(g)

    def test_equals_first_term_slice_at_smax_zero(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            r1, r2 = rng.uniform(0.1, 3.0, size=2)
            x = rng.uniform(-1.0, 1.0)
            g = Geometry(float(r1), float(r2), float(x))
            a = alternative_multipole(g, SeriesTruncation(s_max=0, l_max=12))
            b = first_term_series(g, 12)
            assert a == pytest.approx(b, abs=1e-13)


class TestExponential:
    def test_exact_at_orthogonality(self):
        for r1, r2 in ((1.0, 1.0), (2.5, 0.3), (0.7, 1.9)):
            g = Geometry(r1, r2, 0.0)
            assert exponential_form(g) == direct_coulomb(g)

    def test_hand_value(self):
        expected = math.exp(0.1 / 1.04) / math.sqrt(1.04)
        assert exponential_form(Geometry(1, 0.2, 0.5)) == pytest.approx(
            expected, abs=1e-15
        )

    def test_finite_at_coalescence(self):
        expected = math.exp(0.5) / math.sqrt(2)
        assert exponential_form(Geometry(1, 1, 1.0)) == pytest.approx(
            expected, abs=1e-15
        )


class TestFirstTerm:
    def test_tiny_inner_radius(self):
        assert first_term_series(Geometry(1.0, 1e-12, 0.4), 8) == pytest.approx(
            1.0, abs=1e-11
        )

    def test_leading_term_equal_radii(self):
        assert first_term_series(Geometry(1, 1, 0.0), 0) == pytest.approx(
            1 / math.sqrt(2), abs=1e-15
        )

    def test_hand_partial_sum(self):
        # q = 0.4, P_l(0) = 1, 0, -1/2, 0, 3/8
        expected = (1 + 5 * 0.4**2 * (-0.5) + 9 * 0.4**4 * 0.375) / math.sqrt(1.25)
        assert first_term_series(Geometry(1, 0.5, 0.0), 4) == pytest.approx(
            expected, abs=1e-14
        )


class TestHyperradial:
    def test_values(self):
        assert hyperradial(3.0, 4.0) == pytest.approx(0.2, abs=1e-16)
        assert hyperradial(1.0, 1.0) == pytest.approx(1 / math.sqrt(2), abs=1e-16)

    def test_cosine_identity(self):
        # 1/sqrt(r^2 + (r tan a)^2) = cos(a)/r
        for alpha in (0.2, 0.5, 0.7):
            for r in (0.5, 2.0):
                assert hyperradial(r, r * math.tan(alpha)) == pytest.approx(
                    math.cos(alpha) / r, abs=1e-14
                )

    def test_domain(self):
        with pytest.raises(DomainError):
            hyperradial(0.0, 1.0)


class TestSharedProperties:
    def test_swap_symmetry_bit_exact(self):
        rng = np.random.default_rng(11)
        trunc = SeriesTruncation(s_max=8, l_max=10)
        for _ in range(20):
            r1, r2 = rng.uniform(0.2, 3.0, size=2)
            x = rng.uniform(-0.99, 0.99)
            a = Geometry(float(r1), float(r2), float(x))
            b = Geometry(float(r2), float(r1), float(x))
            assert direct_coulomb(a) == direct_coulomb(b)
            assert classical_multipole(a, 15) == classical_multipole(b, 15)
            assert alternative_multipole(a, trunc) == alternative_multipole(b, trunc)
            assert exponential_form(a) == exponential_form(b)
            assert first_term_series(a, 15) == first_term_series(b, 15)

    def test_scale_covariance(self):
        trunc = SeriesTruncation(s_max=8, l_max=10)
        g = Geometry(1.3, 0.8, -0.4)
        for lam in (0.125, 3.7, 40.0):
            scaled = Geometry(lam * 1.3, lam * 0.8, -0.4)
            for f in (
                direct_coulomb,
                exponential_form,
                lambda gg: classical_multipole(gg, 15),
                lambda gg: alternative_multipole(gg, trunc),
                lambda gg: first_term_series(gg, 15),
            ):
                assert f(scaled) == pytest.approx(f(g) / lam, rel=1e-13)


class TestErrorScan:
    def test_classical_error_small_on_grid(self):
        report = error_scan([0.5], [0.0], [SeriesTruncation(s_max=10, l_max=60)])
        row = next(r for r in report.method_rows if r.method == "classical")
        assert row.rel_error <= 1e-9

    def test_all_errors_vanish_for_small_t(self):
        # every route reduces to 1/r_greater, so errors shrink with t
        # (linearly for the sine-power series, whose l >= 1 terms carry
        # 2l+1 times the classical weight)
        worst = {}
        for t in (1e-2, 1e-4, 1e-6):
            report = error_scan([t], [0.3], [SeriesTruncation(s_max=10, l_max=10)])
            worst[t] = max(r.rel_error for r in report.method_rows)
            assert worst[t] < 5.0 * t
        assert worst[1e-6] < worst[1e-4] < worst[1e-2]

    def test_exponential_error_positive_off_axis(self):
        report = error_scan([0.5], [0.5], [SeriesTruncation(s_max=5, l_max=5)])
        row = next(r for r in report.method_rows if r.method == "exponential")
        assert row.rel_error > 0.0

    def test_coalescence_point_skipped(self):
        report = error_scan([0.5, 1.0], [0.0, 1.0], [SeriesTruncation(s_max=2, l_max=2)])
        points = {(r.t, r.cos_theta) for r in report.method_rows}
        assert (1.0, 1.0) not in points
        assert (1.0, 0.0) in points and (0.5, 1.0) in points

    def test_bessel_rows_cover_orders_for_interior_t(self):
        report = error_scan(
            [0.3, 1.0], [0.0], [SeriesTruncation(s_max=12, l_max=4)]
        )
        ls = sorted({r.l for r in report.bessel_rows})
        ts = sorted({r.t for r in report.bessel_rows})
        assert ls == [0, 1, 2, 3, 4]
        assert ts == [0.3]  # the oracle needs t < 1
        for row in report.bessel_rows:
            assert row.abs_error == abs(row.series - row.oracle)

    def test_csv_layout(self):
        report = error_scan([0.4], [0.2], [SeriesTruncation(s_max=3, l_max=3)])
        lines = report.to_csv().splitlines()
        assert lines[0] == "t,cos_theta,method,l_max,s_max,value,direct,rel_error"
        assert len(lines) == 1 + len(report.method_rows)
        first = lines[1].split(",")
        assert first[2] == "classical" and first[4] == ""  # classical has no s_max
        bessel_lines = report.bessel_csv().splitlines()
        assert bessel_lines[0] == "l,t,s_max,series,oracle,abs_error"

    def test_json_round_trip(self):
        report = error_scan([0.4], [0.2], [SeriesTruncation(s_max=3, l_max=3)])
        doc = json.loads(report.to_json())
        assert doc["grid"]["t"] == [0.4]
        assert len(doc["method_rows"]) == len(report.method_rows)
        assert len(doc["bessel_rows"]) == len(report.bessel_rows)

    def test_deterministic_serialization(self):
        args = ([0.2, 0.6], [-0.5, 0.5], [SeriesTruncation(s_max=6, l_max=8)])
        assert error_scan(*args).to_csv() == error_scan(*args).to_csv()

    def test_grid_validation(self):
        with pytest.raises(ConfigurationError):
            error_scan([1.5], [0.0], [SeriesTruncation(s_max=1, l_max=1)])
        with pytest.raises(ConfigurationError):
            error_scan([0.5], [2.0], [SeriesTruncation(s_max=1, l_max=1)])
        with pytest.raises(ConfigurationError):
            error_scan([0.5], [0.0], [])
