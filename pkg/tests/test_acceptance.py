"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Exactness criteria run at 64 digits with tolerance 1e-50; trend criteria run
in native floats.  Each test prints its verdict (visible under ``pytest -v``)
before asserting, so a failing run still shows the measured values.
"""

import time

import pytest

from lagsob.numerics import windowed_median
from lagsob.sobolev import coeff_asymptotics
from lagsob.verify import (
    ALPHAS,
    ASYMPTOTIC_PARAMS,
    STANDARD_GRID,
    SWEEP,
    TREND_GRID,
    CheckResult,
    check_coefficient_asymptotics,
    check_connection_residual,
    check_discrepancy_report,
    check_five_term_residual,
    check_kernel_dual_method,
    check_kernel_trends,
    check_lambda_asymptotics,
    check_moments_vs_quadrature,
    check_oracle_equivalence,
    check_orthogonality,
    check_quadrature_exactness,
    check_relative_asymptotics,
)

DIGITS = 64
SEED = 1
TOL = 1e-50


def report(capsys, number, title, results, extra=None):
    results = list(results)
    ok = all(r.passed for r in results) and (extra is None or extra[0])
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")
        for r in results:
            print(f"    {r.line()}")
        if extra is not None:
            print(f"    {extra[1]}")
    return ok


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def test_grid_shape():
    assert len(STANDARD_GRID) == 36
    assert ALPHAS == (-0.5, 0.0, 1.5)
    assert len(TREND_GRID) == 6


def test_criterion_01_orthogonality(capsys):
    res, secs = timed(check_orthogonality, DIGITS, SEED, STANDARD_GRID, 40)
    assert res[0].threshold == f"< {TOL:.1e}"
    ok = report(capsys, 1, "orthogonality, 36 configs, n <= 40, < 1e-50, < 2 min", res,
                (secs < 120, f"runtime {secs:.1f} s (budget 120 s)"))
    assert ok


def test_criterion_02_oracle_equivalence(capsys):
    res = check_oracle_equivalence(DIGITS, SEED, STANDARD_GRID, 40)
    assert report(capsys, 2, "S_n(c), S_n'(c), ||S_n||^2 vs 128-digit oracle, < 1e-50", res)


def test_criterion_03_residuals(capsys):
    res = check_connection_residual(DIGITS, SEED, STANDARD_GRID, 38) + check_five_term_residual(DIGITS, SEED, STANDARD_GRID, 38)
    assert report(capsys, 3, "connection and five-term residuals, 20 x, n <= 38, < 1e-50", res)


def test_criterion_04_kernel_dual_method(capsys):
    res = check_kernel_dual_method(DIGITS, SEED, (2, 60))
    assert report(capsys, 4, "summed vs closed-form K, K01, K11 at (c,c), 2 <= n <= 60, < 1e-50", res)


def test_criterion_05_kernel_trends(capsys):
    res, secs = timed(check_kernel_trends, 16, SEED, TREND_GRID, 1000, 100_000)
    ok = report(capsys, 5, "kernel windowed medians -> 1 (0.15 at 1e3, 0.05 at 1e5, decreasing), < 1 min", res,
                (secs < 60, f"runtime {secs:.1f} s (budget 60 s)"))
    assert ok


def test_criterion_06_relative_asymptotics(capsys):
    res = check_relative_asymptotics(16, SEED, ASYMPTOTIC_PARAMS)
    assert report(capsys, 6, "|S_n/L_n - 1| windowed median < 0.05 at 1e4, decreasing", res)


def test_criterion_07_coefficient_asymptotics(capsys):
    res = check_coefficient_asymptotics(16, SEED, ASYMPTOTIC_PARAMS)
    # the literal reading: values at exactly n = 1e2, 1e3, 1e4
    rows = coeff_asymptotics(list(SWEEP), ASYMPTOTIC_PARAMS)
    point = []
    for label, get in (("|A0| n^(1/4)", lambda r: abs(r.A0_n_quarter)), ("|B0| n^(-3/4)", lambda r: abs(r.B0_n_minus_three_quarters))):
        vals = [float(get(r)) for r in rows]
        ok = vals[-1] < 1 and vals[0] > vals[1] > vals[2]
        point.append(CheckResult(f"{label} at n in {SWEEP}", ok, vals[-1], "decreasing, final < 1", " -> ".join(f"{v:.3f}" for v in vals)))
    assert report(capsys, 7, "A0, B0 decay; A1 windowed median within 0.25 of 1; B1/n in [0.2, 5]", res + point)


def test_criterion_08_lambda_asymptotics(capsys):
    res = check_lambda_asymptotics(16, SEED, ASYMPTOTIC_PARAMS)
    assert report(capsys, 8, "lambda / (4n, 6n^2, 4n^3, n^4) within 0.1 at 1e3 and 0.03 at 1e4", res)


def test_criterion_09_quadrature(capsys):
    res = check_quadrature_exactness(DIGITS, SEED, 20) + check_moments_vs_quadrature(DIGITS, SEED, 10)
    assert report(capsys, 9, "20-point rule moments k <= 39 and moments vs quadrature, < 1e-50", res)


def test_criterion_10_discrepancy_report(capsys):
    res = check_discrepancy_report(DIGITS, SEED, (ASYMPTOTIC_PARAMS,), 38)
    res += check_five_term_residual(DIGITS, SEED, (ASYMPTOTIC_PARAMS,), 38)
    assert report(capsys, 10, "discrepancy report generated and projection residual passes", res)
