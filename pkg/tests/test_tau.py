import random
from fractions import Fraction as F

import mpmath as mp
import pytest

from holomon.tau import (
    BiSeries,
    coefficient_difference,
    sigma_equation_coefficients,
    sigma_pvi_residual,
    structure_constant,
    tau_series,
)

THETA = (F(1, 4), F(2, 9), F(4, 13), F(3, 8))


class TestBiSeries:
    def test_ring_ops(self):
        a = BiSeries({(0, 0): F(1), (1, 1): F(2)}, jmax=4)
        b = BiSeries({(0, 1): F(3), (-1, 1): F(1)}, jmax=4)
        prod = a * b
        assert prod.terms[(1, 2)] == 6
        assert prod.terms[(0, 2)] == 2
        assert (a + b).terms[(0, 1)] == 3

    def test_truncation(self):
        a = BiSeries({(0, 3): F(1)}, jmax=4)
        b = BiSeries({(0, 2): F(1)}, jmax=4)
        assert (a * b).is_zero()

    def test_inverse(self):
        a = BiSeries({(0, 0): F(2), (1, 1): F(3), (-1, 2): F(1)}, jmax=5)
        prod = a * a.inverse()
        assert prod.terms == {(0, 0): F(1)}

    def test_inverse_needs_unit(self):
        with pytest.raises(ZeroDivisionError):
            BiSeries({(1, 1): F(1)}, jmax=3).inverse()


class TestTauSeries:
    def test_leading_coefficient_one(self):
        ts = tau_series(THETA, F(3, 8), F(7, 10), N=4, M=2, digits=30)
        assert abs(ts.series.terms[(0, 0)] - 1) < 1e-25

    def test_leading_exponent(self):
        ts = tau_series(THETA, F(3, 8), None, N=2, M=1, normalization="plain")
        th0, tht = THETA[0], THETA[1]
        assert ts.leading_exponent == F(3, 8) ** 2 - th0 ** 2 - tht ** 2

    def test_exact_mode_plain(self):
        ts = tau_series(THETA, F(3, 8), None, N=4, M=2, normalization="plain")
        assert ts.mode == "exact"
        assert all(isinstance(v, F) for v in ts.series.terms.values())

    def test_shift_sectors_graded_by_m_squared(self):
        ts = tau_series(THETA, F(3, 8), None, N=4, M=2, normalization="plain")
        for (m, j) in ts.series.terms:
            assert j >= m * m

    def test_kappa_periodicity(self):
        a = tau_series(THETA, F(3, 8), 1.3, N=4, M=2, digits=30)
        with mp.workdps(30):
            b = tau_series(THETA, F(3, 8), 1.3 + 2 * float(mp.pi), N=4, M=2, digits=30)
        # e^(i kappa m) with integer m has full-turn periodicity; the float
        # 2 pi is inexact, so compare loosely
        assert coefficient_difference(a, b) < 1e-12

    def test_structure_constant_symmetry(self):
        # swapping th0 <-> -th0 leaves the Barnes product unchanged
        a = structure_constant(THETA, F(3, 8), digits=30)
        flipped = (-THETA[0], THETA[1], THETA[2], THETA[3])
        b = structure_constant(flipped, F(3, 8), digits=30)
        with mp.workdps(30):
            assert abs(a - b) < 1e-25


class TestSigmaEquation:
    def test_coefficients_closed_form(self):
        q0, qt, q1, qi = (x * x for x in THETA)
        a, b, c, d, e, f = sigma_equation_coefficients(THETA)
        assert a == qt - qi
        assert b == -q0 + qt + q1 - qi
        assert c == -(q0 + qt)
        assert d == -2 * qt * (q0 + qt + q1 - qi)
        assert e == 0

    def test_residual_vanishes_fresh_draw(self):
        ts = tau_series(THETA, F(3, 8), F(7, 10), N=6, M=3, digits=50)
        res = sigma_pvi_residual(ts)
        assert res, "no slots computed"
        assert max(abs(v) for v in res.values()) < 1e-40

    def test_residual_scales_with_precision(self):
        r30 = sigma_pvi_residual(tau_series(THETA, F(3, 8), F(7, 10), N=6, M=3,
                                            digits=30))
        r50 = sigma_pvi_residual(tau_series(THETA, F(3, 8), F(7, 10), N=6, M=3,
                                            digits=50))
        w30 = max(abs(v) for v in r30.values())
        w50 = max(abs(v) for v in r50.values())
        assert w50 < w30 * mp.mpf(10) ** -15

    def test_random_draws(self):
        rng = random.Random(23)
        for _ in range(3):
            theta = tuple(F(rng.randint(1, 9), rng.randint(10, 29)) for _ in range(4))
            lam = F(rng.randint(8, 17), 40)
            kappa = F(rng.randint(1, 12), 10)
            ts = tau_series(theta, lam, kappa, N=6, M=3, digits=50)
            res = sigma_pvi_residual(ts)
            assert max(abs(v) for v in res.values()) < 1e-10

    def test_plain_sum_fails_equation(self):
        ts = tau_series(THETA, F(3, 8), F(7, 10), N=6, M=3, digits=30,
                        normalization="plain")
        res = sigma_pvi_residual(ts)
        assert max(abs(v) for v in res.values()) > 1e-2

    def test_kappa_rescaling_still_solves(self):
        # e^(2 i kappa m) weighting is the solution at doubled kappa, so the
        # equation still holds; the real negative control is the plain sum
        ts = tau_series(THETA, F(3, 8), F(7, 10), N=6, M=3, digits=40,
                        kappa_multiplier=2)
        res = sigma_pvi_residual(ts)
        assert max(abs(v) for v in res.values()) < 1e-30

    def test_scale_invariance(self):
        # multiplying tau by a constant leaves the log-derivative unchanged
        ts = tau_series(THETA, F(3, 8), F(7, 10), N=6, M=3, digits=40)
        scaled = tau_series(THETA, F(3, 8), F(7, 10), N=6, M=3, digits=40)
        with mp.workdps(40):
            c = mp.mpf("2.7") + mp.mpf("0.4") * 1j
            scaled.series.terms = {k: c * v for k, v in scaled.series.terms.items()}
        ra = sigma_pvi_residual(ts)
        rb = sigma_pvi_residual(scaled)
        with mp.workdps(40):
            for k in ra:
                assert abs(ra[k] - rb[k]) < 1e-30


class TestTruncationStability:
    def test_m_growth_stable(self):
        ts3 = tau_series(THETA, F(3, 8), F(7, 10), N=6, M=3, digits=40)
        ts4 = tau_series(THETA, F(3, 8), F(7, 10), N=6, M=4, digits=40)
        assert coefficient_difference(ts3, ts4) < 1e-35

    def test_degenerate_shift_reported(self):
        # integer internal momentum makes a shifted Gram singular
        with pytest.warns(UserWarning):
            tau_series(THETA, F(1), None, N=2, M=1, normalization="plain")
