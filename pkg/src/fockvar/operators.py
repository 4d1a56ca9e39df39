"""Integral operators of Bergman type and the verifiers built on them.

    P g(z) = (2/pi) int g(w) exp(2 conj(w) z) exp(-2|w|^2) dA(w)
    H f(z) = int exp(-|z-u|^2) f(u) dA(u)
    J g(w) = int |g(z) exp(2 conj(z) w) exp(-2|z|^2)| dA(z)

Each plane integral is taken on a polar rule centred where the Gaussian
factor peaks (z/2 for P, z for H, w/2 for J), with an envelope certificate
derived from the argument's growth bound.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import exponents
from .functions import EntireFunction, monomial
from .modular import gauge_constant, luxemburg_norm, pairing
from .quadrature import disk_rule, integrate_disk, integrate_plane, refine
from .reports import VerificationReport

__all__ = [
    "WeightSpec", "MixedPolynomial", "OperatorSample", "project_pointwise", "project_monomial",
    "project_samples", "h_operator", "j_operator", "apr_product", "mean_value_check",
    "evaluation_bound_check", "inclusion_check", "projection_boundedness_sample",
    "kernel_density_probe", "duality_check", "sup_weighted_modulus",
]


@dataclass(frozen=True)
class WeightSpec:
    """``constant`` (value), ``gaussian`` (beta: e^{-beta|z|^2}) or
    ``power`` (gamma: (1+|z|)^gamma), times a positive ``scale``."""

    kind: str
    param: float
    scale: float = 1.0

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("weight scale must be positive")
        if self.kind == "constant" and self.param <= 0:
            raise ValueError("constant weight must be positive")
        if self.kind == "gaussian" and self.param <= 0:
            raise ValueError("gaussian coefficient must be positive")
        if self.kind == "power" and self.param <= -2:
            raise ValueError("power weight needs gamma > -2 for local integrability")
        if self.kind not in ("constant", "gaussian", "power"):
            raise ValueError(f"unknown weight kind {self.kind!r}")

    def shape(self, z):
        """The weight without its scale factor."""
        z = np.asarray(z, dtype=complex)
        if self.kind == "constant":
            return np.full(z.shape, float(self.param))
        if self.kind == "gaussian":
            return np.exp(-self.param * np.abs(z) ** 2)
        return (1.0 + np.abs(z)) ** self.param

    def __call__(self, z):
        return self.scale * self.shape(z)

    def scaled(self, c):
        return WeightSpec(self.kind, self.param, self.scale * c)

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise ValueError(f"not a weight object: {obj!r}")
        scale = float(obj.get("scale", 1.0))
        for kind in ("constant", "gaussian", "power"):
            if kind in obj:
                return cls(kind, float(obj[kind]), scale)
        raise ValueError(f"unknown weight object: {obj!r}")

    def to_json(self):
        out = {self.kind: self.param}
        if self.scale != 1.0:
            out["scale"] = self.scale
        return out


@dataclass(frozen=True, init=False)
class MixedPolynomial:
    """``sum c_{m,n} w^m conj(w)^n`` -- a non-analytic test integrand with a
    closed-form projection."""

    terms: tuple

    def __init__(self, terms):
        items = terms.items() if isinstance(terms, dict) else terms
        merged = {}
        for (m, n), c in items:
            if m < 0 or n < 0:
                raise ValueError("exponents must be non-negative")
            merged[(int(m), int(n))] = merged.get((int(m), int(n)), 0j) + complex(c)
        object.__setattr__(self, "terms", tuple(sorted((k, c) for k, c in merged.items() if c != 0)))

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        out = np.zeros(w.shape, dtype=complex)
        for (m, n), c in self.terms:
            out = out + c * w ** m * np.conj(w) ** n
        return out

    @property
    def is_zero(self):
        return not self.terms

    def envelope(self):
        s = sum(abs(c) for _, c in self.terms)
        d = max((m + n for (m, n), _ in self.terms), default=0)
        return s, d, 0.0

    def project(self):
        out = EntireFunction()
        for (m, n), c in self.terms:
            out = out + c * project_monomial(m, n)
        return out

    def to_json(self):
        return {"mixed": [[m, n, c.real, c.imag] for (m, n), c in self.terms]}


@dataclass
class OperatorSample:
    points: list
    values: list
    errors: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.points) != len(self.values) or (self.errors and len(self.errors) != len(self.points)):
            raise ValueError("sample lengths disagree")

    def to_json(self):
        return {"points": [[complex(z).real, complex(z).imag] for z in self.points],
                "values": [[complex(v).real, complex(v).imag] for v in self.values],
                "quad_errors": list(self.errors)}


def _shifted_envelope(g, offset):
    """Envelope of ``v -> g(c + v)`` in |v| given ``|c| = offset``."""
    s, d, a = g.envelope()
    return s * (1 + offset) ** d * math.exp(2 * a * offset), d, 2 * a


def project_pointwise(g, z, tol=1e-9, full_output=False):
    """``P g(z)`` by quadrature on a rule centred at z/2."""
    z = complex(z)
    if g.is_zero:
        return (0j, 0.0) if full_output else 0j
    bound, d, shift = _shifted_envelope(g, abs(z) / 2)
    bound *= math.exp(abs(z) ** 2 / 2)
    value, err = integrate_plane(
        lambda w: g(w) * np.exp(2 * np.conj(w) * z - 2 * (w * np.conj(w)).real),
        2.0, d, tol, bound=bound, shift=shift, center=z / 2, rtol=tol)
    value, err = complex(value) * 2 / math.pi, err * 2 / math.pi
    return (value, err) if full_output else value


def project_samples(g, points, tol=1e-9):
    """``P g`` at each point; returned as samples, never re-fitted."""
    vals, errs = [], []
    for z in points:
        v, e = project_pointwise(g, z, tol, full_output=True)
        vals.append(v)
        errs.append(e)
    return OperatorSample(list(points), vals, errs)


def project_monomial(m, n):
    """Closed form of ``P(w^m conj(w)^n)``: zero unless m >= n, otherwise
    ``m! / ((m-n)! 2^n) z^(m-n)``."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    if m < n:
        return EntireFunction()
    return monomial(m - n) * (math.factorial(m) / (math.factorial(m - n) * 2.0 ** n))


def h_operator(f, z, tol=1e-9, full_output=False):
    """``H f(z)`` on a rule centred at z."""
    z = complex(z)
    if f.is_zero:
        return (0.0, 0.0) if full_output else 0.0
    bound, d, shift = _shifted_envelope(f, abs(z))
    value, err = integrate_plane(lambda u: np.exp(-np.abs(u - z) ** 2) * f(u), 1.0, d, tol,
                                 bound=bound, shift=shift, center=z, rtol=tol)
    value = complex(value)
    value = value.real if abs(value.imag) <= err else value
    return (value, err) if full_output else value


def j_operator(g, w, tol=1e-9, full_output=False):
    """``J g(w)`` on a rule centred at w/2."""
    w = complex(w)
    if g.is_zero:
        return (0.0, 0.0) if full_output else 0.0
    bound, d, shift = _shifted_envelope(g, abs(w) / 2)
    bound *= math.exp(abs(w) ** 2 / 2)
    value, err = integrate_plane(
        lambda z: np.abs(g(z)) * np.exp(2 * (np.conj(z) * w).real - 2 * np.abs(z) ** 2),
        2.0, d, tol, bound=bound, shift=shift, center=w / 2, rtol=tol)
    value = float(np.real(value))
    return (value, err) if full_output else value


def apr_product(w, p0, r, center, tol=1e-9, full_output=False):
    """``(avg_B w) (avg_B w^{-1/(p0-1)})^{p0-1}`` on ``B = B(center, r)``.

    Averages are taken for the unscaled shape of ``w`` (relative tolerance);
    the scale factor is applied afterwards, where it cancels exactly.
    """
    if p0 <= 1 or r <= 0:
        raise ValueError("need p0 > 1 and r > 0")
    e = -1.0 / (p0 - 1.0)
    area = math.pi * r * r
    rule = disk_rule(center, r)
    a1, e1, _ = refine(lambda q: q.integrate(w.shape), rule, 0.0, tol, name="apr_product")
    a2, e2, _ = refine(lambda q: q.integrate(lambda z: w.shape(z) ** e), rule, 0.0, tol,
                       name="apr_product")
    avg_w = w.scale * a1 / area
    avg_inv = w.scale ** e * a2 / area
    value = float(avg_w * avg_inv ** (p0 - 1.0))
    rel = e1 / abs(a1) + (p0 - 1.0) * e2 / abs(a2)
    return (value, value * rel) if full_output else value


def mean_value_check(f, z, R, tol=1e-9):
    """``|f(z)| e^{-|z|^2} <= e^{R^2}/(pi R^2) int_{B(z,R)} |f(w)| e^{-|w|^2} dA``."""
    if R <= 0:
        raise ValueError("R must be positive")
    z = complex(z)
    report = VerificationReport("mean_value", "sub-mean-value estimate for Gaussian-damped |f|")
    lhs = abs(complex(f(np.array([z]))[0])) * math.exp(-abs(z) ** 2)
    integral, err = integrate_disk(lambda w: np.abs(f(w)) * np.exp(-np.abs(w) ** 2), z, R, tol)
    factor = math.exp(R * R) / (math.pi * R * R)
    report.add({"f": f, "z": z, "R": R}, lhs, factor * float(np.real(integral)), tol, factor * err)
    return report


def _grid(radius, n):
    x = np.linspace(-radius, radius, n)
    X, Y = np.meshgrid(x, x)
    z = (X + 1j * Y).ravel()
    return z[np.abs(z) <= radius * (1 + 1e-12)]


def sup_weighted_modulus(f, radius=6.0, n=121, polish=True):
    """``sup |f(z)| e^{-|z|^2}`` by grid search plus local polishing."""
    z = _grid(radius, n)
    vals = np.abs(f(z)) * np.exp(-np.abs(z) ** 2)
    best = float(vals.max())
    if polish:
        def neg(x):
            zz = np.array([complex(x[0], x[1])])
            return -float(np.abs(f(zz))[0] * math.exp(-abs(zz[0]) ** 2))
        for i in np.argsort(vals)[-3:]:
            res = minimize(neg, [z[i].real, z[i].imag], method="Nelder-Mead",
                           options={"xatol": 1e-10, "fatol": 1e-14})
            best = max(best, -res.fun)
    return best


def evaluation_bound_check(f, p, points=(), tol=1e-9, radius=4.0, n=33):
    """Measured ``C = sup |f(z)| e^{-|z|^2} / ||f||_p`` over a grid on
    ``|z| <= radius`` and extra ``points``, with a 2x grid refinement check."""
    nrm = luxemburg_norm(f, p, tol)
    if nrm.value <= 0:
        raise ValueError("evaluation bound needs a nonzero function")
    extra = np.asarray(list(points), dtype=complex)
    report = VerificationReport("evaluation_bound", "pointwise evaluation bound |f(z)| <= C e^{|z|^2} ||f||")
    measured = []
    for m in (n, 2 * n - 1):
        z = np.concatenate([_grid(radius, m), extra])
        c = float(np.max(np.abs(f(z)) * np.exp(-np.abs(z) ** 2))) / nrm.value
        measured.append(c)
        report.add({"f": f, "p": p, "grid": m, "radius": radius}, c,
                   quad_error=c * nrm.quadrature_error / nrm.value)
    coarse, fine = measured
    report.measured = coarse
    report.notes.update(norm=nrm.value, refined=fine, relative_change=abs(fine - coarse) / coarse)
    report.checks["finite"] = bool(math.isfinite(coarse) and math.isfinite(fine))
    report.checks["stable"] = abs(fine - coarse) / coarse < 0.05
    return report


def _dominates(p, q):
    if p.p_plus <= q.p_minus:
        return True
    z = exponents.reference_grid()
    return bool(np.all(p(z) <= q(z) + 1e-12))


def inclusion_check(f, p, q, tol=1e-9):
    """``||f||_q <= M ||f||_p`` for ``p <= q`` with
    ``M = max(1, C1^{q+ - p-} C_p / C_q)^{1/q-}`` and ``C1`` the measured
    evaluation constant of ``f`` (at least 1)."""
    if not _dominates(p, q):
        raise ValueError("inclusion needs p(z) <= q(z) everywhere")
    report = VerificationReport("inclusion", "norm inclusion for pointwise ordered exponents")
    np_ = luxemburg_norm(f, p, tol)
    nq = luxemburg_norm(f, q, tol)
    if np_.value == 0:
        report.add({"f": f, "p": p, "q": q}, 0.0, 0.0, tol)
        return report
    c1 = max(1.0, sup_weighted_modulus(f) / np_.value)
    k = c1 ** (q.p_plus - p.p_minus) * gauge_constant(p, tol) / gauge_constant(q, tol)
    bound = max(1.0, k) ** (1.0 / q.p_minus)
    ratio = nq.value / np_.value
    qerr = nq.quadrature_error / np_.value + ratio * np_.quadrature_error / np_.value
    report.add({"f": f, "p": p, "q": q}, ratio, bound, tol, qerr)
    report.notes.update(norm_p=np_.value, norm_q=nq.value, C1=c1, M=bound)
    return report


def _projection_ratio(g, p, tol):
    if isinstance(g, MixedPolynomial):
        pg = g.project()
    elif isinstance(g, EntireFunction):
        pg = g
    else:
        raise TypeError("test functions must be EntireFunction or MixedPolynomial")
    ng = luxemburg_norm(g, p, tol).value
    if ng == 0:
        return None
    return luxemburg_norm(pg, p, tol).value / ng


def random_mixed(rng, max_total=4):
    """A random ``MixedPolynomial`` with total degree at most ``max_total``."""
    terms = {}
    for _ in range(rng.integers(1, 4)):
        m = int(rng.integers(0, max_total + 1))
        n = int(rng.integers(0, max_total - m + 1))
        r, t = math.sqrt(rng.random()), 2 * math.pi * rng.random()
        terms[(m, n)] = r * complex(math.cos(t), math.sin(t))
    return MixedPolynomial(terms)


def projection_boundedness_sample(p, test_set, tol=1e-9, n_extra=10, seed=0):
    """Sampled ``sup ||Pg||_p / ||g||_p`` over ``test_set``, re-measured
    after adding ``n_extra`` seeded random mixed polynomials.

    This is sampling evidence for boundedness of P, not a proof.
    """
    report = VerificationReport("projection_bounded", "boundedness of P on the variable exponent space")
    local = exponents.check_log_holder_local(p, [0.25, 0.1], [0, 1, 1j, -2])
    report.notes["log_holder_local"] = local.measured
    if p.p_infinity is not None:
        report.notes["log_holder_decay"] = exponents.check_log_holder_decay(p, [1, 10, 100]).measured
    ratios = []
    for g in test_set:
        ratio = _projection_ratio(g, p, tol)
        if ratio is not None:
            ratios.append(ratio)
            report.add({"g": g, "p": p}, ratio)
    base = max(ratios, default=0.0)
    rng = np.random.default_rng(seed)
    grown = base
    for _ in range(n_extra):
        ratio = _projection_ratio(random_mixed(rng), p, tol)
        if ratio is not None:
            grown = max(grown, ratio)
    report.measured = base
    report.notes.update(sup=base, sup_grown=grown, evidence="sampled, not proved")
    report.checks["finite"] = math.isfinite(base) and math.isfinite(grown)
    if base > 0:
        report.checks["stable"] = (grown - base) / base < 0.1
    report.checks["regular_exponent"] = math.isfinite(local.measured)
    return report


def density_difference(h):
    """``(K_h - K_0)/(2h) - z`` for real ``h``."""
    return EntireFunction([-1 / (2 * h), -1.0], [(1 / (2 * h), h)])


def kernel_density_probe(p, h=0.25, tol=1e-9):
    """Distances ``d(t) = ||(K_t - K_0)/(2t) - z||_p`` for ``t = h, h/2, h/4``."""
    if not 0 < h <= 0.25:
        raise ValueError("need 0 < h <= 1/4")
    report = VerificationReport("kernel_density", "kernel combinations approximate z")
    hs = [h, h / 2, h / 4]
    ds = [luxemburg_norm(density_difference(t), p, tol) for t in hs]
    for i, (t, d) in enumerate(zip(hs, ds)):
        prev = ds[i - 1].value if i else None
        report.add({"p": p, "h": t}, d.value, prev, tol, d.quadrature_error)
    slope = float(np.polyfit(np.log(hs), np.log([d.value for d in ds]), 1)[0])
    report.measured = slope
    report.notes["d"] = [d.value for d in ds]
    report.checks["strictly_decreasing"] = all(b.value < a.value for a, b in zip(ds, ds[1:]))
    return report


def duality_check(h, p, tol=1e-9, tests=None, lower_constant=1.0):
    """Sampled norm of ``f -> <f, h>`` on the unit sphere of the p-space,
    against ``[c ||h||_p', (4/pi) ||h||_p']``."""
    q = exponents.conjugate(p)
    report = VerificationReport("duality", "dual pairing norm of <., h>")
    nh = luxemburg_norm(h, q, tol)
    if tests is None:
        tests = [h] + [monomial(k) for k in range(5)]
    best = 0.0
    for f in tests:
        nf = luxemburg_norm(f, p, tol).value
        if nf > 0:
            best = max(best, abs(pairing(f, h, tol)) / nf)
    report.add({"h": h, "p": p, "side": "upper"}, best, 4 / math.pi * nh.value, tol, nh.quadrature_error)
    report.add({"h": h, "p": p, "side": "lower"}, lower_constant * nh.value, best, tol,
               nh.quadrature_error)
    report.measured = best
    report.notes["norm_h"] = nh.value
    return report
