import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fockvar import exponents as ex
from fockvar import functions as fn
from fockvar import modular as md

SHIPPED = [ex.constant(2), ex.constant(3), ex.log_decay(2, 1), ex.radial_bump(2, 1, 1)]
# sqrt(n!/2^n), n = 0..6
Z_POWER_NORMS = [1.0, 0.7071067811865476, 0.7071067811865476, 0.8660254037844386,
                 1.224744871391589, 1.9364916731037085, 3.3541019662496847]
# (2/pi) C_p^(1/p) C_p'^(1/p') for p = 3 reduces to 2^(5/3)/3
DUAL_RATIO_P3 = 1.0582673679787997


def test_frozen_oracles():
    for n, v in enumerate(Z_POWER_NORMS):
        assert math.sqrt(math.factorial(n) / 2 ** n) == pytest.approx(v, rel=1e-15)
    cp, cq = math.pi / 3, math.pi / 1.5
    assert 2 / math.pi * cp ** (1 / 3) * cq ** (2 / 3) == pytest.approx(DUAL_RATIO_P3, rel=1e-14)


@pytest.mark.parametrize("v,expected", [(2, math.pi / 2), (1, math.pi), (4, math.pi / 4)])
def test_gauge_constant(v, expected):
    assert md.gauge_constant(ex.constant(v), 1e-10) == pytest.approx(expected, abs=1e-10)


def test_gauge_constant_variable():
    # radial_bump(2,1,1): pi/2 over |z|>1 times e^-2 correction, computed in 1D
    from scipy.integrate import quad
    inner = quad(lambda r: 2 * math.pi * r * math.exp(-(3 - r) * r * r), 0, 1, epsabs=1e-14)[0]
    outer = math.pi / 2 * math.exp(-2)
    assert md.gauge_constant(ex.radial_bump(2, 1, 1)) == pytest.approx(inner + outer, abs=1e-9)


@pytest.mark.parametrize("p", SHIPPED, ids=str)
def test_modular_of_one(p):
    rep = md.modular(fn.monomial(0), p)
    assert rep.value == pytest.approx(1.0, abs=1e-12)


def test_modular_examples():
    assert md.modular(fn.ZERO, ex.constant(2)).value == 0
    assert md.modular(fn.monomial(1), ex.constant(2)).value == pytest.approx(0.5, abs=1e-10)


@pytest.mark.parametrize("n", range(7))
def test_norm_of_powers(n):
    rep = md.luxemburg_norm(fn.monomial(n), ex.constant(2))
    assert rep.value == pytest.approx(Z_POWER_NORMS[n], abs=1e-9)
    assert rep.residual <= 1e-9
    lo, hi = rep.lambda_bracket
    assert lo <= rep.value <= hi


def test_norm_examples():
    assert md.luxemburg_norm(fn.monomial(0), ex.log_decay(2, 1)).value == pytest.approx(1, abs=1e-9)
    zero = md.luxemburg_norm(fn.ZERO, ex.constant(3))
    assert zero.value == 0 and zero.iterations == 0


def test_norm_of_kernel_constant_exponent():
    # rho_p(K_a / lam) = exp(p|a|^2) lam^-p for constant p, so ||K_a|| = e^{|a|^2}
    for v in (1.5, 2, 4):
        assert md.luxemburg_norm(fn.kernel(0.8 + 0.3j), ex.constant(v)).value == pytest.approx(
            math.exp(0.73), rel=1e-9)


@pytest.mark.parametrize("c", [1e13, 1e-13])
def test_norm_bracket_failure(c):
    with pytest.raises(md.NormSolveError):
        md.luxemburg_norm(fn.monomial(0) * c, ex.constant(2))


def test_pairing_examples():
    one, k1 = fn.monomial(0), fn.kernel(1)
    assert md.pairing(one, one) == pytest.approx(1.0, abs=1e-10)
    assert md.pairing(k1, k1) == pytest.approx(math.e ** 2, abs=1e-9)
    assert abs(md.pairing(fn.monomial(1), one)) <= 1e-12


@given(st.complex_numbers(max_magnitude=1.5), st.complex_numbers(max_magnitude=1.5))
def test_pairing_reproduces(a, b):
    # <K_a, K_b> = K_a(b)
    v, err = md.pairing(fn.kernel(a), fn.kernel(b), full_output=True)
    assert abs(v - fn.evaluate(fn.kernel(a), b)) <= err + 1e-9


def test_holder_examples():
    rep = md.holder_margin(fn.monomial(0), fn.monomial(0), ex.constant(2))
    c = rep.cases[0]
    assert c.lhs == pytest.approx(math.pi / 2, abs=1e-9) and c.rhs == pytest.approx(2, abs=1e-9)
    assert c.margin == pytest.approx(2 - math.pi / 2, abs=1e-9)
    zero = md.holder_margin(fn.ZERO, fn.monomial(0), ex.constant(2)).cases[0]
    assert zero.lhs == 0 and zero.rhs == 0 and zero.passed
    k = md.holder_margin(fn.kernel(1), fn.kernel(1), ex.constant(2)).cases[0]
    assert k.margin == pytest.approx((2 - math.pi / 2) * math.e ** 2, rel=1e-8)


def test_holder_rejects_p_minus_one():
    with pytest.raises(ex.ExponentError):
        md.holder_margin(fn.monomial(0), fn.monomial(0), ex.constant(1))


def test_triple_norm_examples():
    assert md.triple_norm(fn.ZERO, ex.constant(2)).value == 0
    one = md.triple_norm(fn.monomial(0), ex.constant(2))
    assert one.value == pytest.approx(1.0, abs=1e-8)
    z = md.triple_norm(fn.monomial(1), ex.constant(2))
    assert z.value == pytest.approx(math.sqrt(0.5), abs=1e-8)
    assert z.supremum == pytest.approx(math.sqrt(0.5), abs=1e-8)
    assert z.upper_bound == pytest.approx(4 / math.pi * math.sqrt(0.5), abs=1e-8)


@pytest.mark.parametrize("v", [3.0, 1.5])
@pytest.mark.parametrize("f", [fn.monomial(0), fn.monomial(1), fn.kernel(1)], ids=repr)
def test_triple_norm_constant_exponent_ratio(v, f):
    rep = md.triple_norm(f, ex.constant(v))
    assert rep.value / rep.norm == pytest.approx(DUAL_RATIO_P3, abs=1e-7)
    assert rep.supremum / rep.norm == pytest.approx(DUAL_RATIO_P3, abs=1e-7)


def test_triple_norm_bounds_ordering():
    for p in SHIPPED:
        rep = md.triple_norm(fn.EntireFunction([0.3, 1j], [(0.5, 0.7)]), p)
        assert rep.value <= rep.supremum + rep.quadrature_error
        assert rep.supremum <= rep.upper_bound


def test_radial_bump_lower_constant_below_one():
    # measured: the dual-ball supremum falls below the Luxemburg norm for this exponent
    rep = md.triple_norm(fn.monomial(1), ex.radial_bump(2, 1, 1))
    assert rep.supremum / rep.norm < 0.999
    assert rep.value <= rep.supremum + rep.quadrature_error


def test_phi1_modular():
    # int |e^{-|z|^2}|^2 dA = pi/2
    g = fn.Integrand(lambda z: np.exp(-np.abs(z) ** 2))
    assert md.phi1_modular(g, ex.constant(2)).value == pytest.approx(math.pi / 2, abs=1e-9)


functions = st.builds(
    fn.EntireFunction,
    st.lists(st.complex_numbers(max_magnitude=1), min_size=1, max_size=4),
    st.lists(st.tuples(st.complex_numbers(max_magnitude=1), st.complex_numbers(max_magnitude=1.2)),
             max_size=2),
).filter(lambda f: f.envelope()[0] > 1e-3)  # norms inside the solver's [1e-12, 1e12] range
exps = st.sampled_from(SHIPPED + [ex.log_decay(1.5, 2.5), ex.constant(1.5)])


@given(functions, exps, st.complex_numbers(min_magnitude=0.1, max_magnitude=5))
def test_homogeneity(f, p, c):
    a = md.luxemburg_norm(f, p)
    b = md.luxemburg_norm(f * c, p)
    assert b.value == pytest.approx(abs(c) * a.value, abs=b.quadrature_error + abs(c) * a.quadrature_error + 1e-9)


@given(functions, exps)
def test_unit_ball_consistency(f, p):
    n = md.luxemburg_norm(f, p)
    assert md.modular(f / n.value, p).value == pytest.approx(1.0, abs=1e-7)


@given(functions, functions, exps)
def test_triangle_inequality(f, g, p):
    h = f + g
    nf, ng, nh = (md.luxemburg_norm(x, p) for x in (f, g, h))
    slack = nf.quadrature_error + ng.quadrature_error + nh.quadrature_error + 1e-9
    assert nh.value <= nf.value + ng.value + slack


@given(functions, st.sampled_from([1.5, 2.0, 4.0]))
def test_constant_exponent_reduction(f, v):
    p = ex.constant(v)
    assert md.luxemburg_norm(f, p).value == pytest.approx(md.modular(f, p).value ** (1 / v), abs=1e-7)


def test_report_json():
    out = md.luxemburg_norm(fn.monomial(1), ex.constant(2)).to_json()
    assert set(out) == {"value", "quad_error", "lambda_bracket", "iterations", "residual"}
