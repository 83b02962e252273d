import random

import pytest
from hypothesis import given, settings, strategies as st

from lagsob.kernels import (
    confluent_sums,
    kernel_asymptotic_prediction,
    kernel_cc,
    kernel_partials_cc,
    kernel_xy,
)
from lagsob.laguerre import orthonormal_values
from lagsob.numerics import DomainError, context, windowed_median
from lagsob.quadrature import gauss_laguerre, integrate

D = 64


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


class TestKernelXY:
    @pytest.mark.parametrize("x, y", [(0.3, 0.3), (1, 5), (-2, 7.5)])
    def test_order_zero(self, x, y):
        assert abs(kernel_xy(0, 0, x, y, D) - 1) < 1e-60

    def test_order_one_diagonal(self):
        assert abs(kernel_xy(1, 0, 1, 1, D) - 1) < 1e-60

    def test_summed_matches_quotient(self):
        ctx = context(D)
        s = kernel_xy(5, 0.5, 2, 3, D, method="summed")
        q = kernel_xy(5, 0.5, 2, 3, D)
        assert rel(q, s) < ctx.mpf(10) ** -(D - 8)

    def test_confluent_matches_summed(self):
        ctx = context(D)
        for n in (1, 4, 25):
            s = kernel_xy(n, 1.5, 0.7, 0.7, D, method="summed")
            q = kernel_xy(n, 1.5, 0.7, 0.7, D)
            assert rel(q, s) < ctx.mpf(10) ** -(D - 8)

    @settings(max_examples=30, deadline=None)
    @given(
        n=st.integers(min_value=0, max_value=30),
        alpha=st.sampled_from([-0.5, 0.0, 1.5]),
        x=st.floats(min_value=-3, max_value=30),
        y=st.floats(min_value=-3, max_value=30),
    )
    def test_symmetry(self, n, alpha, x, y):
        for method in ("christoffel_darboux", "summed"):
            assert kernel_xy(n, alpha, x, y, 30, method) == kernel_xy(n, alpha, y, x, 30, method)

    @pytest.mark.parametrize("n", [0, 3, 10, 20])
    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 2.0])
    def test_reproducing(self, n, alpha):
        ctx = context(D)
        rng = random.Random(1000 * n + int(10 * alpha))
        # random coefficients in the orthonormal basis keep the node terms O(1);
        # monomial coefficients would cancel by ~13 digits at degree 20
        coeffs = [ctx.mpf(rng.uniform(-1, 1)) for _ in range(n + 1)]
        a = ctx.mpf(alpha)

        def p(y):
            return ctx.fdot(coeffs, orthonormal_values(ctx, n, a, y))

        rule = gauss_laguerre(n + 1, alpha, D)
        for x in (ctx.mpf("0.4"), ctx.mpf(3)):
            val = integrate(lambda y: kernel_xy(n, alpha, x, y, D) * p(y), rule)
            target = p(x)
            assert abs(val - target) <= ctx.mpf(10) ** -(D - 10) * max(abs(target), 1)

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            kernel_xy(2, 0, 1, 2, method="bogus")


class TestConfluent:
    def test_examples(self):
        assert abs(kernel_cc(1, 0, 7, D) - 1) < 1e-60
        assert abs(kernel_cc(2, 0, 1, D) - 1) < 1e-60

    def test_indexing_against_kernel_xy(self):
        # kernel_cc(n) sums degrees below n, kernel_xy(n) up to n
        ctx = context(D)
        assert rel(kernel_cc(9, 0.5, 2.5, D), kernel_xy(8, 0.5, 2.5, 2.5, D)) < ctx.mpf(10) ** -55

    def test_large_degree_prediction(self):
        n = 10**4
        pred = kernel_asymptotic_prediction(n, 0, 1, 16).K_pred
        assert 0.9 <= kernel_cc(n, 0, 1, 16) / pred <= 1.1

    def test_partials_trivial(self):
        kv = kernel_partials_cc(1, 0, 3, "summed", D)
        assert kv.K01 == 0 and kv.K11 == 0 and kv.K == 1
        kv = kernel_partials_cc(2, 0, 1, "closed_form", D)
        assert abs(kv.K01) < 1e-60 and abs(kv.K11 - 1) < 1e-60

    def test_partials_example(self):
        kv = kernel_partials_cc(2, 0, 1, "summed", D)
        assert kv.K01 == 0 and abs(kv.K11 - 1) < 1e-60

    def test_dual_method_n30(self):
        ctx = context(D)
        s = kernel_partials_cc(30, 1.2, 2.5, "summed", D)
        c = kernel_partials_cc(30, 1.2, 2.5, "closed_form", D)
        tol = ctx.mpf(10) ** -(D - 10)
        assert rel(c.K, s.K) < tol
        assert rel(c.K11, s.K11) < tol
        assert abs(c.K01 - s.K01) < tol * ctx.sqrt(s.K * s.K11)

    def test_dual_method_grid(self):
        ctx = context(D)
        tol = ctx.mpf(10) ** -(D - 10)
        for alpha in (-0.5, 0.0, 1.5):
            for c in (0.5, 1, 4):
                sums = confluent_sums(60, alpha, c, D)
                for n in range(2, 61, 7):
                    cf = kernel_partials_cc(n, alpha, c, "closed_form", D)
                    assert rel(cf.K, sums.K[n]) < tol
                    assert rel(cf.K11, sums.K11[n]) < tol
                    assert abs(cf.K01 - sums.K01[n]) < tol * ctx.sqrt(sums.K[n] * sums.K11[n])
                    assert cf.K01 == cf.K10

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            kernel_partials_cc(3, 0, 1, "bogus")

    def test_positive(self):
        for c in (-4, 0, 0.3, 9):
            assert kernel_cc(15, -0.5, c, 30) > 0


class TestPrediction:
    def test_values(self):
        ctx = context(D)
        p = kernel_asymptotic_prediction(100, 0, 1, D)
        ratio = ctx.e / ctx.pi
        assert rel(p.K_pred, 10 * ratio) < 1e-60
        assert p.K01_pred == p.K_pred
        assert rel(p.K11_pred, ratio * 1000 / 3) < 1e-60

    @pytest.mark.parametrize("c", [0, -1])
    def test_domain(self, c):
        with pytest.raises(DomainError):
            kernel_asymptotic_prediction(10, 0, c)

    @pytest.mark.parametrize("alpha", [0.0, 0.5])
    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
    def test_windowed_trend(self, alpha, c):
        sums = confluent_sums(120_000, alpha, c, 16)
        for N, tol in ((1000, 0.15), (100_000, 0.05)):
            ratios = [
                sums.K[n] / kernel_asymptotic_prediction(n, alpha, c, 16).K_pred
                for n in range(N, int(1.2 * N) + 1)
            ]
            assert abs(windowed_median(ratios) - 1) < tol
