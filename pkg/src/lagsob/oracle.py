"""Reference Sobolev polynomials by Gram-Schmidt on monomials.

This path shares nothing with the kernel formulas: it builds the Gram matrix
of 1, x, ..., x^n under the Sobolev inner product from Gamma moments and
orthogonalizes at high precision.  It is slow and limited to small degrees,
which is fine for ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .laguerre import _check_degree, horner
from .numerics import ConsistencyError, DomainError, context, digits_of
from .sobolev import SobolevParams

__all__ = [
    "SobolevGram",
    "OracleBasis",
    "ORACLE_MAX_DEGREE",
    "sobolev_gram",
    "gram_schmidt_monic",
    "oracle_basis",
    "oracle_eval",
    "oracle_eval_derivative",
]

ORACLE_MAX_DEGREE = 60


@dataclass(frozen=True)
class SobolevGram:
    params: SobolevParams
    size: int
    entries: tuple  # tuple of row tuples
    digits: int

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


@dataclass(frozen=True)
class OracleBasis:
    """Row n holds the ascending power-basis coefficients of monic S_n."""

    coeff_rows: tuple
    norms_sq: tuple
    digits: int
    max_off_diagonal: Any

    @property
    def n_max(self) -> int:
        return len(self.coeff_rows) - 1


def sobolev_gram(n_max: int, params: SobolevParams, prec=None) -> SobolevGram:
    """Gram matrix <x^i, x^j>_S for 0 <= i, j <= n_max.

    Entry (i, j) is Gamma(alpha+i+j+1) + M c^{i+j} + N i j c^{i+j-2}, the last
    term taken as 0 when i j = 0.  Precision defaults to 128 digits.
    Raises :class:`ConsistencyError` if the matrix is not positive definite.
    """
    n_max = _check_degree(n_max, "n_max")
    if n_max > ORACLE_MAX_DEGREE:
        raise DomainError(f"oracle degree capped at {ORACLE_MAX_DEGREE}, got {n_max}")
    ctx = context(128 if prec is None else prec)
    a, c, M, N = params.scalars(ctx)
    size = n_max + 1
    gam = [ctx.gamma(a + k + 1) for k in range(2 * size - 1)]
    cp = [c ** k for k in range(2 * size - 1)]
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            val = gam[i + j] + M * cp[i + j]
            if i and j:
                val += N * i * j * cp[i + j - 2]
            row.append(val)
        rows.append(tuple(row))
    try:
        ctx.cholesky(ctx.matrix(rows))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConsistencyError("Sobolev Gram matrix is not positive definite") from exc
    return SobolevGram(params, size, tuple(rows), digits_of(ctx))


def gram_schmidt_monic(gram: SobolevGram, threshold=None) -> OracleBasis:
    """Monic orthogonal rows by classical Gram-Schmidt with one reorthogonalization.

    After construction every normalized off-diagonal product is checked
    against ``threshold`` (default ``10**-(digits - 20)``) and a larger
    value raises :class:`ConsistencyError`.
    """
    ctx = context(gram.digits)
    G = gram.entries
    size = gram.size
    zero = 0 * ctx.one
    rows: list[list] = []
    applied: list[list] = []  # G @ row, full length
    norms: list = []

    def apply(vec):
        return [ctx.fdot(G[i][: len(vec)], vec) for i in range(size)]

    for n in range(size):
        s = [zero] * n + [ctx.one]
        for _ in range(2):
            for k in range(n):
                proj = ctx.fdot(s, applied[k][: n + 1]) / norms[k]
                for i in range(k + 1):
                    s[i] -= proj * rows[k][i]
        g = apply(s)
        rows.append(s)
        applied.append(g)
        norms.append(ctx.fdot(s, g[: n + 1]))

    if threshold is None:
        threshold = ctx.mpf(10) ** (-(gram.digits - 20))
    worst = zero
    for i in range(size):
        for j in range(i):
            val = abs(ctx.fdot(rows[j], applied[i][: j + 1])) / ctx.sqrt(norms[i] * norms[j])
            worst = max(worst, val)
    if worst > threshold:
        raise ConsistencyError(f"oracle lost orthogonality: {worst} > {threshold}")
    return OracleBasis(tuple(tuple(r) for r in rows), tuple(norms), gram.digits, worst)


def oracle_basis(n_max: int, params: SobolevParams, prec=None) -> OracleBasis:
    return gram_schmidt_monic(sobolev_gram(n_max, params, prec))


def _row(basis: OracleBasis, n: int):
    n = _check_degree(n)
    if n > basis.n_max:
        raise DomainError(f"degree {n} beyond the oracle basis (n_max={basis.n_max})")
    return basis.coeff_rows[n]


def oracle_eval(basis: OracleBasis, n: int, x: Any):
    """Horner evaluation of S_n at x in the basis precision."""
    ctx = context(basis.digits)
    return horner(_row(basis, n), ctx.convert(x))


def oracle_eval_derivative(basis: OracleBasis, n: int, x: Any):
    ctx = context(basis.digits)
    row = _row(basis, n)
    if len(row) == 1:
        return 0 * ctx.one
    return horner([k * row[k] for k in range(1, len(row))], ctx.convert(x))
