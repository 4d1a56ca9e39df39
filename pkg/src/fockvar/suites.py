"""Seeded test inputs and the property suites run by ``fockvar verify``.

Every suite draws all of its random inputs up front from one generator and
then evaluates the cases through an ordered thread pool, so a given seed
produces the same report regardless of thread count.
"""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import exponents as ex
from .functions import EntireFunction, kernel, monomial
from .modular import holder_margin, luxemburg_norm, triple_norm
from .operators import (MixedPolynomial, WeightSpec, apr_product, evaluation_bound_check,
                        inclusion_check, kernel_density_probe, mean_value_check,
                        project_monomial, project_pointwise)
from .reports import CaseRecord, VerificationReport

SUITES = ("holder", "equiv", "eval", "inclusion", "reproduce", "apr", "density")
DEFAULT_SEED = 42

EQUIV_EXPONENTS = (ex.constant(2), ex.constant(3), ex.log_decay(2, 1), ex.radial_bump(2, 1, 1))


def thread_count():
    raw = os.environ.get("FOCKVAR_THREADS")
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def parallel_map(fn, items):
    items = list(items)
    n = min(thread_count(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(n) as pool:
        return list(pool.map(fn, items))


def _unit_disk(rng, size=None):
    r = np.sqrt(rng.random(size))
    t = 2 * np.pi * rng.random(size)
    return r * np.exp(1j * t)


def random_polynomial(rng, max_degree=6):
    deg = int(rng.integers(0, max_degree + 1))
    coeffs = _unit_disk(rng, deg + 1)
    if abs(coeffs[-1]) < 1e-3:
        coeffs[-1] = 0.5
    return EntireFunction(coeffs.tolist())


def random_kernels(rng, max_terms=2, max_center=1.5):
    n = int(rng.integers(1, max_terms + 1))
    coeffs = _unit_disk(rng, n)
    centers = max_center * _unit_disk(rng, n)
    return EntireFunction(kernels=list(zip(coeffs.tolist(), centers.tolist())))


def random_function(rng):
    """A polynomial (degree <= 6, coefficients in the unit disk), a kernel
    combination (centres |a| <= 1.5), or their sum."""
    kind = rng.integers(0, 3)
    if kind == 0:
        f = random_polynomial(rng)
    elif kind == 1:
        f = random_kernels(rng)
    else:
        f = random_polynomial(rng, 3) + random_kernels(rng, 1)
    return f if not f.is_zero else monomial(0)


def random_exponent(rng):
    """A shipped-family exponent with 1.5 <= p <= 4."""
    kind = rng.integers(0, 3)
    if kind == 0:
        return ex.constant(round(float(rng.uniform(1.5, 4.0)), 6))
    base = float(rng.uniform(1.5, 3.0))
    amp = float(rng.uniform(0.0, min(1.0, 4.0 - base)))
    if kind == 1:
        return ex.log_decay(base, amp)
    return ex.radial_bump(base, amp if rng.random() < 0.5 else -min(amp, base - 1.5),
                          float(rng.uniform(0.5, 2.0)))


def corpus():
    """Twenty fixed entire functions used by the operator suites."""
    fixed = [
        monomial(0), monomial(1), monomial(2), monomial(3), 0.5 * monomial(4),
        EntireFunction([1, 1]), EntireFunction([0.5, -1j, 0.25]),
        kernel(1), kernel(1j), kernel(-1), kernel(0.5 + 0.5j), kernel(-0.3 + 0.8j),
        kernel(1) - kernel(-1), monomial(1) + kernel(0.5), EntireFunction([0, 0, 1], [(0.5j, -0.6)]),
    ]
    rng = np.random.default_rng(20)
    while len(fixed) < 20:
        fixed.append(random_polynomial(rng, 4) + random_kernels(rng, 1, 1.0))
    return fixed


def grid_points(half_width=1.4, n=5):
    """``n x n`` tensor grid on ``[-half_width, half_width]^2``."""
    x = np.linspace(-half_width, half_width, n)
    return [complex(a, b) for b in x for a in x]


def _budget(n, budget):
    return n if budget is None else max(1, min(n, budget))


def holder_suite(seed=DEFAULT_SEED, tol=1e-9, budget=None, n=200, margin_tol=1e-7):
    rng = np.random.default_rng(seed)
    n = _budget(n, budget)
    triples = [(random_function(rng), random_function(rng), random_exponent(rng)) for _ in range(n)]
    closed = holder_margin(monomial(0), monomial(0), ex.constant(2), tol)
    out = VerificationReport("holder", "weighted Hoelder inequality with constant 2")
    c = closed.cases[0]
    out.checks["closed_form"] = abs(c.lhs - math.pi / 2) <= 1e-9 and abs(c.rhs - 2) <= 1e-9
    for rep in parallel_map(lambda t: holder_margin(*t, tol), triples):
        for case in rep.cases:
            case.tol = margin_tol
            out.cases.append(case)
    out.measured = out.min_margin
    return [out]


def equivalence_suite(seed=DEFAULT_SEED, tol=1e-9, budget=None, n=100, margin_tol=1e-6,
                      exponents=EQUIV_EXPONENTS):
    rng = np.random.default_rng(seed)
    n = _budget(n, budget)
    items = [(random_function(rng), exponents[i % len(exponents)]) for i in range(n)]
    out = VerificationReport("norm_equivalence",
                             "Luxemburg and dual-pairing norms agree within 1 and 4/pi")

    def run(item):
        f, p = item
        return f, p, triple_norm(f, p, tol)

    worst, worst_sup = {}, {}
    for f, p, t in parallel_map(run, items):
        inputs = {"f": f, "p": p}
        out.cases.append(CaseRecord({**inputs, "side": "lower"}, t.norm, t.value, margin_tol,
                                    quad_error=t.quadrature_error))
        out.cases.append(CaseRecord({**inputs, "side": "upper"}, t.value, t.upper_bound, margin_tol,
                                    quad_error=t.quadrature_error))
        key = json.dumps(p.to_json(), sort_keys=True)
        worst[key] = min(worst.get(key, math.inf), t.value / t.norm)
        worst_sup[key] = min(worst_sup.get(key, math.inf), t.supremum / t.norm)
    out.notes["min_witness_ratio"] = worst
    out.notes["min_supremum_ratio"] = worst_sup
    out.measured = out.min_margin
    return [out]


def eval_suite(seed=DEFAULT_SEED, tol=1e-9, budget=None, margin_tol=1e-7):
    """Mean-value lemma and the evaluation bound over the corpus."""
    fs = corpus()[:_budget(20, budget)]
    points = [0j, 1, 1.5j, -1 + 1j, -2]
    mv = VerificationReport("mean_value", "sub-mean-value estimate for Gaussian-damped |f|")
    jobs = [(f, z, R) for f in fs for z in points for R in (0.5, 1.0, 2.0)]
    # |f| has kinks at zeros of f; resolve disk integrals to the margin scale only
    disk_tol = max(tol, margin_tol / 10)
    for rep in parallel_map(lambda j: mean_value_check(*j, disk_tol), jobs):
        for case in rep.cases:
            case.tol = margin_tol
            mv.cases.append(case)
    closed = mean_value_check(monomial(0), 0, 1, tol).cases[0]
    mv.checks["closed_form"] = abs(closed.rhs - (math.e - 1)) <= 1e-9
    mv.measured = mv.min_margin

    ev = VerificationReport("evaluation_bound", "pointwise evaluation bound |f(z)| <= C e^{|z|^2} ||f||")
    p = ex.constant(2)
    reports = parallel_map(lambda f: evaluation_bound_check(f, p, tol=tol), fs)
    for rep in reports:
        ev.cases.extend(rep.cases)
        for k, v in rep.checks.items():
            ev.checks[k] = ev.checks.get(k, True) and v
    ev.measured = max(r.measured for r in reports)
    k1 = evaluation_bound_check(kernel(1), p, tol=tol)
    ev.checks["kernel_constant"] = abs(k1.measured - 1) <= 1e-6
    ev.notes["kernel_constant"] = k1.measured
    return [mv, ev]


INCLUSION_PAIRS = ((ex.constant(2), ex.constant(4)), (ex.log_decay(2, 1), ex.constant(4)))


def inclusion_suite(seed=DEFAULT_SEED, tol=1e-9, budget=None, n=50, margin_tol=1e-6):
    rng = np.random.default_rng(seed)
    n = _budget(n, budget)
    fs = [random_function(rng) for _ in range(n)]
    out = VerificationReport("inclusion", "norm inclusion for pointwise ordered exponents")
    jobs = [(f, p, q) for p, q in INCLUSION_PAIRS for f in fs]
    for rep in parallel_map(lambda j: inclusion_check(*j, tol), jobs):
        for case in rep.cases:
            case.tol = margin_tol
            out.cases.append(case)
    zq = luxemburg_norm(monomial(1), ex.constant(4), tol).value
    out.notes["z_norm_q4"] = zq
    out.checks["z_example"] = abs(zq - 8 ** -0.25) <= 1e-7
    out.measured = out.min_margin
    return [out]


def reproduce_suite(seed=DEFAULT_SEED, tol=1e-9, budget=None, margin_tol=1e-7):
    """Reproducing identity on the corpus and the closed-form projections."""
    pts = grid_points()
    fs = corpus()[:_budget(20, budget)]
    rep = VerificationReport("reproducing", "P reproduces entire functions")

    def run_point(job):
        f, z = job
        v, err = project_pointwise(f, z, tol, full_output=True)
        fz = complex(f(np.array([z]))[0])
        return CaseRecord({"f": f, "z": z}, abs(v - fz), 0.0, margin_tol, quad_error=0.0)

    rep.cases.extend(parallel_map(run_point, [(f, z) for f in fs for z in pts]))
    rep.measured = max(c.lhs for c in rep.cases)

    mono = VerificationReport("projection_monomials", "P on w^m conj(w)^n in closed form")
    pairs = [(m, n) for m in range(7) for n in range(7 - m)]
    mono_pts = grid_points(1.4, 5)

    def run_mono(job):
        (m, n), z = job
        v = project_pointwise(MixedPolynomial({(m, n): 1}), z, tol)
        exact = complex(project_monomial(m, n)(np.array([z]))[0])
        return CaseRecord({"m": m, "n": n, "z": z}, abs(v - exact), 0.0, margin_tol)

    mono.cases.extend(parallel_map(run_mono, [(mn, z) for mn in pairs for z in mono_pts]))
    for name, g, target in (("conj_w", MixedPolynomial({(0, 1): 1}), 0.0),
                            ("abs_w_squared", MixedPolynomial({(1, 1): 1}), 0.5)):
        err = max(abs(project_pointwise(g, z, tol) - target) for z in (0j, 1 + 1j, -0.5j))
        mono.cases.append(CaseRecord({"g": name}, err, 0.0, 1e-8))
    mono.measured = max(c.lhs for c in mono.cases)
    return [rep, mono]


def apr_suite(seed=DEFAULT_SEED, tol=1e-9, budget=None):
    rep = VerificationReport("apr_gaussian", "the Gaussian weight is not a Muckenhoupt weight")
    centers = [0, 2, 4, 6]
    w = WeightSpec("gaussian", 1.0)
    products = [apr_product(w, 2.0, 1.0, c, tol) for c in centers]
    for c, a, b in zip(centers[1:], products, products[1:]):
        rep.add({"weight": w, "center": c}, a, b)
    rep.checks["strictly_increasing"] = all(b > a for a, b in zip(products, products[1:]))
    rep.checks["unbounded"] = products[-1] > 1e3
    rep.notes["products"] = products
    rep.measured = products[-1]
    const = VerificationReport("apr_constant", "constant weights have product one")
    for c in (0.5, 1.0, 7.0):
        v = apr_product(WeightSpec("constant", c), 2.0, 1.0, 0.0, tol)
        const.add({"weight": c}, abs(v - 1), 0.0, 1e-10)
    return [rep, const]


def density_suite(seed=DEFAULT_SEED, tol=1e-9, budget=None):
    out = []
    for p in (ex.constant(2), ex.log_decay(2, 1)):
        rep = kernel_density_probe(p, 0.25, tol)
        rep.checks["slope_near_one"] = abs(rep.measured - 1) <= 0.2
        out.append(rep)
    return out


_RUNNERS = {
    "holder": holder_suite, "equiv": equivalence_suite, "eval": eval_suite,
    "inclusion": inclusion_suite, "reproduce": reproduce_suite, "apr": apr_suite,
    "density": density_suite,
}


def run_suite(name, seed=DEFAULT_SEED, tol=1e-9, budget=None):
    """Reports for one suite, or for all of them with ``name="all"``."""
    if name == "all":
        return [r for s in SUITES for r in _RUNNERS[s](seed=seed, tol=tol, budget=budget)]
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    return _RUNNERS[name](seed=seed, tol=tol, budget=budget)
