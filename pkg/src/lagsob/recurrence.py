"""Five-term recurrence for the Sobolev-type polynomials.

(x - c)^2 S_n = S_{n+2} + l_p1 S_{n+1} + l_0 S_n + l_m1 S_{n-1} + l_m2 S_{n-2}.

Three ways to get the coefficients:

``projection``
    l_k = <(x-c)^2 S_n, S_k>_S / ||S_k||_S^2 by exact moments.  This is the
    reference and is limited to the degrees the power basis supports.
``closed_form``
    Expressions in the expansion coefficients of (x-c)^2 S_n over monic
    Laguerre polynomials and the connection coefficients, in orthonormal
    scaling, so they work for any degree in native floats.
``paper_formula``
    The closed expressions as usually displayed in the literature, kept for
    comparison; :func:`discrepancy_report` shows how they fare.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence

from .laguerre import _alpha, _check_degree, _monic_values
from .numerics import SWEEP_DIGITS, DomainError, context, digits_of, guard_context, to_scalar
from .sobolev import (
    SobolevFamily,
    SobolevParams,
    _poly_mul,
    _shift_power,
    eval_sobolev,
    inner_product_matrix,
    sobolev_coefficient_rows,
    sobolev_family,
)

__all__ = [
    "TildeCoeffs",
    "FiveTermCoeffs",
    "LambdaAsymptoticsRow",
    "classical_expansion",
    "tilde_coeffs",
    "tilde_residual",
    "five_term_coeffs",
    "five_term_table",
    "recurrence_residual",
    "lambda_asymptotics",
    "discrepancy_report",
    "METHODS",
]

METHODS = ("projection", "closed_form", "paper_formula")


class TildeCoeffs(NamedTuple):
    """(x-c)^2 S_n = L_{n+2} + b_t L_{n+1} + c_t L_n + d_t L_{n-1} + e_t L_{n-2}."""

    n: int
    b_t: Any
    c_t: Any
    d_t: Any
    e_t: Any


class FiveTermCoeffs(NamedTuple):
    n: int
    l_p1: Any
    l_0: Any
    l_m1: Any
    l_m2: Any
    method: str


class LambdaAsymptoticsRow(NamedTuple):
    n: int
    l_p1_over_4n: Any
    l_0_over_6n2: Any
    l_m1_over_4n3: Any
    l_m2_over_n4: Any


def _beta(a, k):
    return 2 * k + a + 1


def _gamma(a, k):
    return k * (k + a)


def classical_expansion(n: int, alpha: Any, c: Any, prec=None) -> TildeCoeffs:
    """Expansion of (x-c)^2 L_n over L_{n+2}..L_{n-2}, for any real c."""
    ctx = context(prec)
    n = _check_degree(n)
    a = _alpha(ctx, alpha, strict=False)
    cv = ctx.re(to_scalar(ctx, c, "c"))
    bn, bm = _beta(a, n), _beta(a, n - 1)
    gn, gm, gp = _gamma(a, n), _gamma(a, n - 1), _gamma(a, n + 1)
    return TildeCoeffs(
        n,
        _beta(a, n + 1) + bn - 2 * cv,
        gp + gn + (bn - cv) ** 2,
        gn * (bn + bm - 2 * cv),
        gn * gm,
    )


def _tilde(fam: SobolevFamily, n: int) -> TildeCoeffs:
    a, c = fam.alpha, fam.c
    A1, A0, B1, B0 = fam.A1[n], fam.A0[n], fam.B1[n], fam.B0[n]
    bn, bm = _beta(a, n), _beta(a, n - 1)
    gn, gm, gp = _gamma(a, n), _gamma(a, n - 1), _gamma(a, n + 1)
    return TildeCoeffs(
        n,
        _beta(a, n + 1) + bn - 2 * c + A1,
        gp + gn + (bn - c) ** 2 + A1 * (bn - c) + A0 + B1,
        gn * (bn + bm - 2 * c) + gn * A1 + (bm - c) * B1 + B0,
        gn * gm + gm * B1,
    )


def tilde_coeffs(n: int, params: SobolevParams, prec=None) -> TildeCoeffs:
    """Coefficients of (x-c)^2 S_n in the monic Laguerre basis."""
    n = _check_degree(n, "n", 1)
    return _tilde(sobolev_family(params, n + 1, prec), n)


def tilde_residual(n: int, params: SobolevParams, xs: Sequence, prec=None):
    """Max over xs of |(x-c)^2 S_n(x) - sum tilde_k L_k(x)| / max term size."""
    n = _check_degree(n, "n", 1)
    t = tilde_coeffs(n, params, prec)
    ctx = context(prec)
    a, c, _, _ = params.scalars(ctx)
    worst = 0 * ctx.one
    for x in xs:
        xv = to_scalar(ctx, x, "x")
        L = [0 * xv] + _monic_values(ctx, n + 2, a, xv)  # L[k+1] is L_k; L[0] stands for L_{-1}
        lhs = (xv - c) ** 2 * eval_sobolev(n, params, xv, prec)
        terms = [L[n + 3], t.b_t * L[n + 2], t.c_t * L[n + 1], t.d_t * L[n], t.e_t * L[n - 1]]
        scale = max([abs(lhs)] + [abs(v) for v in terms])
        if scale:
            worst = max(worst, abs(lhs - ctx.fsum(terms)) / scale)
    return worst


def _closed_form(fam: SobolevFamily, n: int) -> FiveTermCoeffs:
    a, c = fam.alpha, fam.c
    rho = fam.rho
    gn, gm, gp = _gamma(a, n), _gamma(a, n - 1), _gamma(a, n + 1)
    tn, tp = _tilde(fam, n), _tilde(fam, n + 1)
    A1 = fam.A1[n]
    l_p1 = tp.d_t / (gp * rho[n + 1]) + A1
    l_0 = tn.c_t / rho[n] + tn.d_t * A1 / (gn * rho[n]) + fam.A0[n] + fam.B1[n] - (_beta(a, n - 1) - c) * A1
    l_m1 = tn.d_t / rho[n - 1] + fam.A1[n - 1] * gn * rho[n] / rho[n - 1]
    l_m2 = gn * gm * rho[n] / rho[n - 2]
    return FiveTermCoeffs(n, l_p1, l_0, l_m1, l_m2, "closed_form")


def _scaled(fam: SobolevFamily, value, log_divisor):
    """value / exp(log_divisor) without overflow."""
    ctx = fam.ctx
    if digits_of(ctx) > 17:
        return value * ctx.exp(-log_divisor)
    return value * math.exp(-float(log_divisor))


def _displayed_variants(fam: SobolevFamily, n: int) -> dict:
    """Every displayed closed form for the two disputed coefficients."""
    a, c = fam.alpha, fam.c
    rho = fam.rho
    gn, gp = _gamma(a, n), _gamma(a, n + 1)
    tn, tp = _tilde(fam, n), _tilde(fam, n + 1)
    A1, A0, B1 = fam.A1[n], fam.A0[n], fam.B1[n]
    shift = _beta(a, n - 1) - c
    log_sn1 = fam.log_norm_sq(n + 1)
    log_sn = fam.log_norm_sq(n)
    # scale-free pieces: ||L_n||^2/||S_{n+1}||^2, ||L_n||^2/||S_n||^2, ||L_{n-1}||^2/||S_n||^2
    r_p1 = 1 / (gp * rho[n + 1])
    r_n = 1 / rho[n]
    r_m1 = 1 / (gn * rho[n])
    base_0 = tn.c_t * r_n + tn.d_t * r_m1
    return {
        "l_p1": {
            "displayed": tp.d_t * r_p1 + _scaled(fam, A1, log_sn1),
            "derivation": tp.d_t * r_p1 + A1,
        },
        "l_0": {
            "displayed_minus": base_0 + _scaled(fam, -shift + A0 + B1, log_sn),
            "derivation_plus": base_0 + _scaled(fam, shift + A0 + B1, log_sn),
            "derivation_unsimplified": tn.c_t * r_n + A1 * (tn.d_t * r_m1 - shift) + A0 + B1,
        },
        "l_m1": {"displayed": tn.d_t / rho[n - 1] + fam.A1[n - 1] * gn * rho[n] / rho[n - 1]},
        "l_m2": {"displayed": gn * _gamma(a, n - 1) * rho[n] / rho[n - 2]},
    }


def five_term_table(n_max: int, params: SobolevParams, prec=None) -> list[FiveTermCoeffs]:
    """Projection coefficients for every n = 2..n_max, sharing one set of moments.

    Entry n of the returned list is degree n; entries 0 and 1 are ``None``.
    """
    n_max = _check_degree(n_max, "n_max", 2)
    ctx = context(prec)
    gctx = guard_context(ctx)
    rows = sobolev_coefficient_rows(n_max + 2, params, prec)
    _, c, _, _ = params.scalars(gctx)
    shift2 = _shift_power(gctx, c, 2)
    lifted = [_poly_mul(shift2, rows[n]) for n in range(2, n_max + 1)]
    G = inner_product_matrix(rows + lifted, params, prec)
    base = len(rows)
    out: list = [None, None]
    for n in range(2, n_max + 1):
        i = base + n - 2
        lam = [ctx.convert(G[i][k] / G[k][k]) for k in (n + 1, n, n - 1, n - 2)]
        out.append(FiveTermCoeffs(n, *lam, "projection"))
    return out


def _projection(n: int, params: SobolevParams, prec) -> FiveTermCoeffs:
    ctx = context(prec)
    gctx = guard_context(ctx)
    rows = sobolev_coefficient_rows(n + 2, params, prec)
    _, c, _, _ = params.scalars(gctx)
    lifted = _poly_mul(_shift_power(gctx, c, 2), rows[n])
    targets = [rows[k] for k in (n + 1, n, n - 1, n - 2)]
    G = inner_product_matrix([lifted] + targets, params, prec)
    lam = [ctx.convert(G[0][i] / G[i][i]) for i in range(1, 5)]
    return FiveTermCoeffs(n, *lam, "projection")


def five_term_coeffs(n: int, params: SobolevParams, method: str = "projection", prec=None) -> FiveTermCoeffs:
    """Recurrence coefficients for degree n >= 2 by the requested method."""
    n = _check_degree(n, "n", 2)
    if method == "projection":
        return _projection(n, params, prec)
    fam = sobolev_family(params, n + 1, prec)
    if method == "closed_form":
        return _closed_form(fam, n)
    if method == "paper_formula":
        v = _displayed_variants(fam, n)
        return FiveTermCoeffs(
            n, v["l_p1"]["displayed"], v["l_0"]["displayed_minus"], v["l_m1"]["displayed"], v["l_m2"]["displayed"],
            "paper_formula",
        )
    raise DomainError(f"unknown method {method!r}; choose from {METHODS}")


def recurrence_residual(n: int, params: SobolevParams, xs: Sequence, prec=None, coeffs: FiveTermCoeffs | None = None):
    """Max over xs of the recurrence defect divided by the largest term.

    Coefficients default to the projection method.
    """
    n = _check_degree(n, "n", 2)
    ctx = context(prec)
    lam = coeffs if coeffs is not None else five_term_coeffs(n, params, "projection", prec)
    _, c, _, _ = params.scalars(ctx)
    worst = 0 * ctx.one
    for x in xs:
        xv = to_scalar(ctx, x, "x")
        S = {k: eval_sobolev(k, params, xv, prec) for k in range(n - 2, n + 3)}
        lhs = (xv - c) ** 2 * S[n]
        terms = [S[n + 2], lam.l_p1 * S[n + 1], lam.l_0 * S[n], lam.l_m1 * S[n - 1], lam.l_m2 * S[n - 2]]
        scale = max([abs(lhs)] + [abs(v) for v in terms])
        if scale:
            worst = max(worst, abs(lhs - ctx.fsum(terms)) / scale)
    return worst


def lambda_asymptotics(n_list: Sequence[int], params: SobolevParams, prec=SWEEP_DIGITS) -> list[LambdaAsymptoticsRow]:
    """Coefficients divided by 4n, 6n^2, 4n^3 and n^4 (closed-form path)."""
    ns = [_check_degree(n, "n", 2) for n in n_list]
    if not ns:
        return []
    fam = sobolev_family(params, max(ns) + 1, prec)
    out = []
    for n in ns:
        lam = _closed_form(fam, n)
        nf = fam.ctx.convert(n)
        out.append(
            LambdaAsymptoticsRow(
                n, lam.l_p1 / (4 * nf), lam.l_0 / (6 * nf ** 2), lam.l_m1 / (4 * nf ** 3), lam.l_m2 / nf ** 4
            )
        )
    return out


@dataclass(frozen=True)
class _Tally:
    worst: Any = 0.0
    at: int = -1

    def update(self, err, n):
        return _Tally(err, n) if err > self.worst else self


def discrepancy_report(
    params_list: Sequence[SobolevParams], n_max: int = 38, prec=None, as_json: bool = False
):
    """Compare every closed-form variant with projection for 2 <= n <= n_max.

    Returns a dict (or its JSON text) with, per coefficient and variant, the
    worst relative deviation from projection, where it occurs, and a verdict
    ``"matches"`` / ``"differs"`` at tolerance 10**-(digits-12).
    """
    ctx = context(prec)
    digits = digits_of(ctx)
    tol = 10.0 ** (-(digits - 12))
    tallies: dict = {}
    for params in params_list:
        fam = sobolev_family(params, n_max + 1, prec)
        table = five_term_table(n_max, params, prec)
        for n in range(2, n_max + 1):
            proj = table[n]
            ref = {"l_p1": proj.l_p1, "l_0": proj.l_0, "l_m1": proj.l_m1, "l_m2": proj.l_m2}
            variants = _displayed_variants(fam, n)
            closed = _closed_form(fam, n)
            for name in ref:
                variants[name]["closed_form"] = getattr(closed, name)
            for coef, forms in variants.items():
                for variant, value in forms.items():
                    err = abs(value - ref[coef]) / abs(ref[coef])
                    key = (coef, variant)
                    tallies[key] = tallies.get(key, _Tally()).update(err, n)
    report = {
        "params": [
            {"alpha": str(p.alpha), "c": str(p.c), "M": str(p.M), "N": str(p.N)} for p in params_list
        ],
        "n_range": [2, n_max],
        "precision": digits,
        "tolerance": f"{tol:.1e}",
        "reference": "projection",
        "coefficients": {},
    }
    for (coef, variant), tally in sorted(tallies.items()):
        report["coefficients"].setdefault(coef, {})[variant] = {
            "max_rel_deviation": f"{float(tally.worst):.3e}",
            "worst_n": tally.at,
            "verdict": "matches" if tally.worst <= tol else "differs",
        }
    report["matching_variants"] = {
        coef: sorted(v for v, r in table.items() if r["verdict"] == "matches")
        for coef, table in report["coefficients"].items()
    }
    return json.dumps(report, indent=2, sort_keys=True) if as_json else report
