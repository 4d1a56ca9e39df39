"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or
``python tests/test_acceptance.py``.
"""

import functools
import math
import sys
import warnings

import numpy as np
import pytest

from fockvar import exponents as ex
from fockvar import functions as fn
from fockvar import suites
from fockvar.modular import luxemburg_norm, modular
from fockvar.operators import j_operator
from fockvar.quadrature import QuadratureWarning, integrate_plane

SEED = 42
TOL = 1e-9


@functools.cache
def eval_reports():
    """Mean-value and evaluation-bound reports, shared by criteria 7 and 8."""
    return suites.eval_suite(seed=SEED, tol=TOL)


# collected here and printed by the terminal summary hook in conftest.py
VERDICTS = []


def verdict(number, title, ok, detail):
    VERDICTS.append(f"criterion {number:2d} {title:<24s} {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


@pytest.fixture(autouse=True)
def quiet_quadrature():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuadratureWarning)
        yield


def test_01_normalization():
    shipped = [ex.constant(2), ex.constant(3), ex.log_decay(2, 1), ex.radial_bump(2, 1, 1)]
    worst = max(abs(modular(fn.monomial(0), p, TOL).value - 1) for p in shipped)
    assert verdict(1, "normalization", worst <= 1e-8, f"max |rho(1) - 1| = {worst:.2e}")


def test_02_quadrature_oracle():
    worst = 0.0
    for n in range(7):
        exact = math.pi * math.factorial(n) / 2 ** (n + 1)
        value, _ = integrate_plane(lambda z: np.abs(z) ** (2 * n) * np.exp(-2 * np.abs(z) ** 2),
                                   2.0, 2 * n, TOL)
        worst = max(worst, abs(value.real - exact) / exact)
    assert verdict(2, "quadrature oracle", worst <= 1e-8, f"max relative error = {worst:.2e}")


def test_03_norm_oracle():
    p2 = ex.constant(2)
    oracle = max(abs(luxemburg_norm(fn.monomial(n), p2, TOL).value - math.sqrt(math.factorial(n) / 2 ** n))
                 for n in range(7))
    rng = np.random.default_rng(SEED)
    fs = [suites.random_function(rng) for _ in range(50)]
    reduction = 0.0
    for v in (1.5, 2.0, 4.0):
        p = ex.constant(v)
        for f in fs:
            reduction = max(reduction, abs(luxemburg_norm(f, p, TOL).value - modular(f, p, TOL).value ** (1 / v)))
    ok = oracle <= 1e-7 and reduction <= 1e-7
    assert verdict(3, "norm oracle", ok, f"z^n error {oracle:.2e}, reduction error {reduction:.2e} (150 cases)")


def test_04_holder_suite():
    (rep,) = suites.holder_suite(seed=SEED, tol=TOL)
    margin = rep.min_margin
    ok = len(rep.cases) >= 200 and margin >= -1e-7 and rep.checks["closed_form"]
    assert verdict(4, "Hoelder suite", ok,
                   f"{len(rep.cases)} cases, min margin {margin:.3e}, closed form {rep.checks['closed_form']}")


def test_05_norm_equivalence():
    (rep,) = suites.equivalence_suite(seed=SEED, tol=TOL)
    bad = [c for c in rep.cases if c.margin < -1e-6]
    by_exponent = {}
    for c in bad:
        key = str(c.inputs["p"].to_json())
        by_exponent[key] = by_exponent.get(key, 0) + 1
    ratios = ", ".join(f"{k}: {v:.4f}" for k, v in rep.notes["min_witness_ratio"].items())
    detail = (f"{len(rep.cases) // 2} functions, {len(bad)} bound violations {by_exponent}; "
              f"min witness/norm per exponent {ratios}")
    assert verdict(5, "norm equivalence", not bad, detail)


def test_06_reproducing_projection():
    rep, mono = suites.reproduce_suite(seed=SEED, tol=TOL)
    repro = max(c.lhs for c in rep.cases)
    agree = max(c.lhs for c in mono.cases if "m" in c.inputs)
    special = max(c.lhs for c in mono.cases if "g" in c.inputs)
    ok = len(rep.cases) == 500 and repro <= 1e-7 and agree <= 1e-7 and special <= 1e-8
    assert verdict(6, "reproducing/projection", ok,
                   f"|Pf - f| {repro:.2e}, monomials {agree:.2e}, conj(w) and |w|^2 {special:.2e}")


def test_07_mean_value_lemma():
    mv, _ = eval_reports()
    closed = mv.checks["closed_form"]
    ok = mv.min_margin >= -1e-7 and closed
    assert verdict(7, "mean-value lemma", ok,
                   f"{len(mv.cases)} cases, min margin {mv.min_margin:.3e}, RHS(1,0,1) = e-1: {closed}")


def test_08_evaluation_bound():
    _, ev = eval_reports()
    k1 = ev.notes["kernel_constant"]
    ok = ev.checks["finite"] and ev.checks["stable"] and abs(k1 - 1) <= 1e-6
    assert verdict(8, "evaluation bound", ok,
                   f"max C over corpus {ev.measured:.4f}, stable {ev.checks['stable']}, C(K_1) = {k1:.9f}")


def test_09_inclusion():
    (rep,) = suites.inclusion_suite(seed=SEED, tol=TOL)
    worst = rep.min_margin
    zq = rep.notes["z_norm_q4"]
    ok = len(rep.cases) == 100 and worst >= -1e-6 and abs(zq - 8 ** -0.25) <= 1e-7
    assert verdict(9, "inclusion", ok, f"{len(rep.cases)} cases, min M - ratio {worst:.3e}, "
                                       f"||z||_4 error {abs(zq - 8 ** -0.25):.2e}")


def test_10_muckenhoupt_exhibit():
    gauss, const = suites.apr_suite(seed=SEED, tol=TOL)
    products = gauss.notes["products"]
    const_err = max(c.lhs for c in const.cases)
    ok = gauss.checks["strictly_increasing"] and products[-1] > 1e3 and const_err <= 1e-10
    assert verdict(10, "Muckenhoupt exhibit", ok,
                   f"products {[f'{v:.4g}' for v in products]}, constant weights error {const_err:.1e}")


def test_11_j_closed_form():
    rng = np.random.default_rng(SEED)
    pts = 2 * np.sqrt(rng.random(10)) * np.exp(2j * np.pi * rng.random(10))
    worst = max(abs(j_operator(fn.monomial(0), w, TOL) / (math.pi / 2 * math.exp(abs(w) ** 2 / 2)) - 1)
                for w in pts)
    assert verdict(11, "J closed form", worst <= 1e-7, f"max relative error {worst:.2e} at 10 points")


def test_12_density_probe():
    reports = suites.density_suite(seed=SEED, tol=TOL)
    ok = all(r.checks["strictly_decreasing"] and abs(r.measured - 1) <= 0.2 for r in reports)
    slopes = ", ".join(f"{r.measured:.3f}" for r in reports)
    assert verdict(12, "density probe", ok, f"monotone {all(r.checks['strictly_decreasing'] for r in reports)}, "
                                            f"slopes {slopes}")


def test_13_regularity_reports():
    balls = [0.5, 0.25, 0.1]
    centers = [0, 1 + 1j, -2.5, 3j]
    radii = [0, 0.5, 1, 10, 1e3, 1e6]
    local_ok = decay_ok = True
    for v in (1.0, 2.0, 3.5):
        p = ex.constant(v)
        local_ok &= ex.check_log_holder_local(p, balls, centers).measured == 1.0
        decay_ok &= ex.check_log_holder_decay(p, radii).measured == 0.0
    ld = ex.check_log_holder_decay(ex.log_decay(2, 1), radii)
    ld_err = max(abs(c.lhs - 1) for c in ld.cases)
    ok = local_ok and decay_ok and ld_err <= 1e-9
    assert verdict(13, "regularity reports", ok,
                   f"constant local == 1: {local_ok}, decay == 0: {decay_ok}, log-decay C error {ld_err:.1e}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
