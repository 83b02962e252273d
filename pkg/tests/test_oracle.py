import pytest

from lagsob.laguerre import monic_coefficients
from lagsob.numerics import ConsistencyError, DomainError, context
from lagsob.oracle import (
    ORACLE_MAX_DEGREE,
    gram_schmidt_monic,
    oracle_basis,
    oracle_eval,
    oracle_eval_derivative,
    sobolev_gram,
)
from lagsob.sobolev import SobolevParams, eval_sobolev, sobolev_family, sobolev_norm_sq, sobolev_values_at_c

D = 64


def tol(k, digits=D):
    return context(digits).mpf(10) ** -(digits - k)


class TestGram:
    def test_entries(self):
        assert sobolev_gram(2, SobolevParams(0, 1, 1, 0))[0, 0] == 2
        assert sobolev_gram(2, SobolevParams(0, 1, 1, 1))[1, 1] == 4
        assert sobolev_gram(3, SobolevParams(0, 2, 0, 1))[2, 3] == 168

    def test_symmetric(self):
        g = sobolev_gram(8, SobolevParams(0.5, 1.5, 2, 3))
        assert all(g[i, j] == g[j, i] for i in range(9) for j in range(9))

    def test_default_precision(self):
        assert sobolev_gram(2, SobolevParams(0, 1)).digits == 128

    def test_degree_cap(self):
        with pytest.raises(DomainError):
            sobolev_gram(ORACLE_MAX_DEGREE + 1, SobolevParams(0, 1))

    def test_not_positive_definite(self):
        # bypass validation to reach the Cholesky guard with a negative mass
        p = object.__new__(SobolevParams)
        for name, value in (("alpha", 0), ("c", 1), ("M", -10), ("N", 0)):
            object.__setattr__(p, name, value)
        with pytest.raises(ConsistencyError):
            sobolev_gram(3, p)


class TestGramSchmidt:
    def test_first_degree(self):
        basis = oracle_basis(1, SobolevParams(0, 1, 1, 0))
        assert basis.coeff_rows[1] == (-1, 1)
        assert basis.norms_sq[1] == 1

    def test_classical_rows(self):
        ctx = context(128)
        basis = oracle_basis(10, SobolevParams(0.5, 2))
        L = monic_coefficients(10, ctx.mpf(0.5), ctx)
        for n in range(11):
            for got, want in zip(basis.coeff_rows[n], L[n]):
                assert abs(got - want) <= tol(10, 128) * max(1, abs(want))

    def test_monic_and_orthogonal(self):
        # the oracle runs at twice the 64-digit working precision it certifies
        basis = oracle_basis(40, SobolevParams(1.5, 4, 10, 0.1))
        assert all(row[-1] == 1 for row in basis.coeff_rows)
        assert basis.max_off_diagonal < tol(14)

    def test_threshold_trips(self):
        g = sobolev_gram(20, SobolevParams(0, 1, 1, 1), prec=40)
        with pytest.raises(ConsistencyError):
            gram_schmidt_monic(g, threshold=context(40).mpf(10) ** -200)


class TestEval:
    def test_examples(self):
        basis = oracle_basis(3, SobolevParams(0, 1, 1, 0))
        assert oracle_eval(basis, 0, 17) == 1
        assert oracle_eval(basis, 1, 0) == -1
        assert oracle_eval_derivative(basis, 0, 3) == 0
        assert oracle_eval_derivative(basis, 1, 3) == 1

    def test_beyond_basis(self):
        basis = oracle_basis(3, SobolevParams(0, 1))
        with pytest.raises(DomainError):
            oracle_eval(basis, 4, 1)

    @pytest.mark.parametrize("p", [SobolevParams(0, 1, 1, 1), SobolevParams(-0.5, 0.5, 0, 1), SobolevParams(1.5, 4, 10, 0.1)])
    def test_matches_main_path(self, p):
        import random

        ctx = context(D)
        rng = random.Random(5)
        basis = oracle_basis(40, p)
        for n in (0, 1, 2, 13, 40):
            scale = ctx.sqrt(sobolev_norm_sq(n, p, D))
            for _ in range(20):
                x = ctx.mpf(rng.uniform(0, 25))
                want = ctx.convert(oracle_eval(basis, n, x))
                assert abs(eval_sobolev(n, p, x, D) - want) < tol(12) * max(scale, abs(want))

    def test_values_and_norms_across_grid(self):
        ctx = context(D)
        for a in (-0.5, 0, 1.5):
            for c in (0.5, 1, 4):
                for M, N in ((1, 0), (0, 1), (1, 1), (10, 0.1)):
                    p = SobolevParams(a, c, M, N)
                    basis = oracle_basis(40, p)
                    fam = sobolev_family(p, 40, D)
                    for n in range(1, 41, 3):
                        v = fam.values_at_c(n)
                        scale = ctx.sqrt(fam.norm_sq(n))
                        assert abs(v.S_c - ctx.convert(oracle_eval(basis, n, c))) < tol(12) * scale
                        assert abs(v.dS_c - ctx.convert(oracle_eval_derivative(basis, n, c))) < tol(12) * scale
                        assert abs(fam.norm_sq(n) - ctx.convert(basis.norms_sq[n])) < tol(12) * fam.norm_sq(n)
