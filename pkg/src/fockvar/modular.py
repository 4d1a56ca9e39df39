"""Normalised Gaussian modular, Luxemburg norm, weighted pairing, Hoelder
margin and the dual-pairing (triple) norm.

The modular of ``f`` for an exponent ``p`` is

    rho_p(f) = C_p^{-1} int |f(z)|^{p(z)} exp(-p(z)|z|^2) dA(z),
    C_p      = int exp(-p(z)|z|^2) dA(z),

so that ``rho_p(1) = 1``.  Both integrals are taken with the same polar rule,
which keeps that identity exact to rounding.  The norm is
``inf{lam > 0 : rho_p(f/lam) <= 1}``.

A norm solve fixes one rule (refined at the current estimate of lam) and
bisects on it, so every bisection step reuses the same samples of ``|f|``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .exponents import conjugate
from .quadrature import plane_rule, refine, integrate_plane
from .reports import VerificationReport

__all__ = [
    "ModularReport", "NormSolveError", "gauge_constant", "modular", "luxemburg_norm",
    "pairing", "holder_margin", "triple_norm", "phi1_modular",
]

LAMBDA_RANGE = (1e-12, 1e12)


class NormSolveError(RuntimeError):
    """Luxemburg bracket not found or bisection did not settle."""


@dataclass
class ModularReport:
    value: float
    quadrature_error: float = 0.0
    lambda_bracket: tuple = None
    iterations: int = 0
    residual: float = None
    upper_bound: float = None
    supremum: float = None
    norm: float = None
    rule: object = None

    def to_json(self):
        out = {"value": self.value, "quad_error": self.quadrature_error}
        if self.lambda_bracket is not None:
            out.update(lambda_bracket=list(self.lambda_bracket), iterations=self.iterations,
                       residual=self.residual)
        for key in ("upper_bound", "supremum", "norm"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


def _certificate(f, p, lam=1.0, decay=None):
    s, d, a = f.envelope()
    s = s / lam
    decay = p.p_minus if decay is None else min(decay, p.p_minus)
    return dict(decay=decay, degree=math.ceil(d * p.p_plus), bound=max(1.0, s) ** p.p_plus,
                shift=2 * a * p.p_minus, min_radius=max(1.0, 2 * a), breakpoints=p.breakpoints)


def _rule_for(f, p, tol, lam=1.0, decay=None):
    return plane_rule(tol=tol, **_certificate(f, p, lam, decay))


class _Samples:
    """``log|f|``, ``p`` and ``|z|^2`` at the nodes of one rule."""

    def __init__(self, f, p, rule):
        z = rule.nodes
        self.rule = rule
        self.w = rule.weights
        self.z2 = (z * np.conj(z)).real
        self.p = p(z)
        with np.errstate(divide="ignore"):
            self.logabs = np.log(np.abs(f(z)))
        self.gauge = float(np.sum(self.w * np.exp(-self.p * self.z2)))

    def rho(self, lam=1.0):
        with np.errstate(under="ignore"):
            e = np.exp(self.p * (self.logabs - math.log(lam) - self.z2))
        return float(np.sum(self.w * e)) / self.gauge


def gauge_constant(p, tol=1e-9):
    """``C_p = int exp(-p(z)|z|^2) dA``."""
    value, _ = integrate_plane(lambda z: np.exp(-p(z) * (z * np.conj(z)).real), p.p_minus, 0, tol,
                               breakpoints=p.breakpoints)
    return float(value.real)


def phi1_modular(f, p, tol=1e-9, *, decay=1.0):
    """Raw unweighted modular ``int |f|^{p(z)} dA`` for integrands that carry
    their own Gaussian decay ``exp(-decay |z|^2)``."""
    s, d, a = f.envelope()
    value, err = integrate_plane(lambda z: np.abs(f(z)) ** p(z), decay * p.p_minus,
                                 d * p.p_plus, tol, bound=max(1.0, s) ** p.p_plus,
                                 shift=2 * a * p.p_plus, breakpoints=p.breakpoints)
    return ModularReport(float(value.real), err)


def modular(f, p, tol=1e-9):
    """``rho_p(f)`` with its quadrature error."""
    if f.is_zero:
        return ModularReport(0.0)
    rule = _rule_for(f, p, tol)
    value, err, rule = refine(lambda r: _Samples(f, p, r).rho(), rule, tol, tol, name="modular")
    err += rule.tail_bound / _Samples(f, p, rule).gauge
    return ModularReport(value, err, rule=rule)


def _solve_unit(rho, tol, lam0=1.0):
    """Bisection for ``rho(lam) = 1`` on the decreasing map ``lam -> rho(lam)``."""
    lo_lim, hi_lim = LAMBDA_RANGE
    lam0 = min(max(lam0, lo_lim), hi_lim)
    lo = hi = lam0
    it = 0
    if rho(lam0) > 1:
        while rho(hi) > 1:
            hi *= 2.0
            it += 1
            if hi > hi_lim:
                raise NormSolveError("no Luxemburg bracket below 1e12")
        lo = hi / 2.0
    else:
        while rho(lo) <= 1:
            lo /= 2.0
            it += 1
            if lo < lo_lim:
                raise NormSolveError("no Luxemburg bracket above 1e-12")
        hi = lo * 2.0
    while True:
        mid = 0.5 * (lo + hi)
        rm = rho(mid)
        it += 1
        if rm > 1:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 0.1 * tol * max(1.0, hi) and abs(rm - 1) <= tol:
            return mid, abs(rm - 1), (lo, hi), it
        if hi - lo <= 8 * np.finfo(float).eps * hi or it > 400:
            return mid, abs(rm - 1), (lo, hi), it


def luxemburg_norm(f, p, tol=1e-9):
    """``||f||_p = inf{lam > 0 : rho_p(f/lam) <= 1}`` with a solver trace."""
    return _norm_solve(f, p, tol)


def _norm_solve(f, p, tol, decay=None):
    if f.is_zero:
        return ModularReport(0.0, 0.0, (0.0, 0.0), 0, 0.0)
    coarse = _Samples(f, p, _rule_for(f, p, tol, 1.0, decay))
    r1 = coarse.rho()
    guess = r1 ** (1.0 / p.p_plus) if r1 > 0 else 1.0
    lam, *_ = _solve_unit(coarse.rho, 1e-6, guess)
    for _ in range(3):
        rule = _rule_for(f, p, tol, lam / 2, decay)
        _, qerr, rule = refine(lambda r: _Samples(f, p, r).rho(lam), rule, tol, tol,
                               name="luxemburg_norm")
        samples = _Samples(f, p, rule)
        new, resid, bracket, it = _solve_unit(samples.rho, tol, lam)
        settled = abs(new - lam) <= 0.1 * lam
        lam = new
        if settled:
            break
    qerr += rule.tail_bound / samples.gauge
    # |d rho / d lam| >= p_minus / lam near rho = 1
    err = lam * qerr / p.p_minus + (bracket[1] - bracket[0])
    return ModularReport(lam, err, bracket, it, resid, rule=rule)


def pairing(f, g, tol=1e-9, full_output=False):
    """``(2/pi) int f conj(g) exp(-2|z|^2) dA``."""
    if f.is_zero or g.is_zero:
        return (0j, 0.0) if full_output else 0j
    sf, df, af = f.envelope()
    sg, dg, ag = g.envelope()
    value, err = integrate_plane(
        lambda z: f(z) * np.conj(g(z)) * np.exp(-2 * (z * np.conj(z)).real),
        2.0, df + dg, tol, bound=sf * sg, shift=2 * (af + ag))
    value = complex(value) * 2 / math.pi
    err = err * 2 / math.pi
    return (value, err) if full_output else value


def holder_margin(f, g, p, tol=1e-9):
    """``|int f conj(g) e^{-2|z|^2} dA| <= 2 ||f||_p ||g||_p'``."""
    q = conjugate(p)
    report = VerificationReport("holder", "weighted Hoelder inequality with constant 2")
    nf = luxemburg_norm(f, p, tol)
    ng = luxemburg_norm(g, q, tol)
    pv, perr = pairing(f, g, tol, full_output=True)
    lhs = abs(pv) * math.pi / 2
    rhs = 2 * nf.value * ng.value
    qerr = perr * math.pi / 2 + 2 * (nf.quadrature_error * ng.value + ng.quadrature_error * nf.value)
    report.add({"f": f, "g": g, "p": p}, lhs, rhs, tol, qerr)
    report.notes.update(norm_f=nf.value, norm_g=ng.value)
    return report


def _dual_values(f, p, norm, rule, tol):
    """Exact dual-ball supremum and the classical witness value on one rule.

    The supremum of the linear functional ``h -> (2/pi) int |F| h e^{-2|z|^2}``
    over ``rho_p'(h) <= 1`` is attained where its gradient is parallel to the
    modular's, giving ``h = (s A)^{p-1}`` with
    ``A = 2 C_p' |F| e^{(p'-2)|z|^2} / (pi p')`` and one scalar ``s`` fixed
    by ``rho_p'(h) = 1``.  The classical witness replaces ``(s A)^{p-1}`` by
    ``(pi/(2 C_p)) |F|^{p-1} e^{-(p-2)|z|^2}`` and is rescaled into the ball.
    """
    s = _Samples(f, p, rule)
    pc = s.p / (s.p - 1.0)
    log_f = s.logabs - math.log(norm)
    live = np.isfinite(log_f)
    gauge_c = float(np.sum(s.w * np.exp(-pc * s.z2)))

    def ball_rho(log_h):
        def rho(lam):
            with np.errstate(under="ignore"):
                return float(np.sum(s.w * np.exp(pc * (log_h - math.log(lam) - s.z2)))) / gauge_c
        return rho

    def attained(log_h):
        with np.errstate(under="ignore"):
            return float(np.sum(s.w * np.exp(log_f + log_h - 2 * s.z2))) * 2 / math.pi

    with np.errstate(invalid="ignore"):
        log_a = np.log(2 * gauge_c / (math.pi * pc)) + log_f + (pc - 2.0) * s.z2
        log_w = math.log(math.pi / (2 * s.gauge)) + (s.p - 1.0) * log_f - s.z2 * (s.p - 2.0)
    log_a = np.where(live, log_a, -np.inf)
    log_w = np.where(live, log_w, -np.inf)

    # rho_p'((sA)^{p-1}) = C_p'^{-1} sum w (sA)^p e^{-p'|z|^2}; solve in lam = 1/s
    def kkt_rho(lam):
        with np.errstate(under="ignore"):
            return float(np.sum(s.w * np.exp(s.p * (log_a - math.log(lam)) - pc * s.z2))) / gauge_c

    lam, *_ = _solve_unit(kkt_rho, tol * 1e-2, 1.0)
    exact = attained((s.p - 1.0) * (log_a - math.log(lam)))
    w_norm, *_ = _solve_unit(ball_rho(log_w), tol * 1e-2, 1.0)
    witness = attained(log_w) / w_norm
    return norm * exact, norm * witness


def triple_norm(f, p, tol=1e-9):
    """The dual-pairing norm ``sup{(2/pi)|int f conj(g) e^{-2|z|^2}| : rho_p'(g) <= 1}``.

    ``value`` is the pairing attained by the classical extremal function
    rescaled into the dual unit ball, a lower bound for the supremum.
    ``supremum`` is the supremum itself, attained by the maximiser described
    in :func:`_dual_values`, and ``upper_bound`` is the Hoelder cap
    ``(4/pi) ||f||_p``.
    """
    q = conjugate(p)
    if f.is_zero:
        return ModularReport(0.0, 0.0, upper_bound=0.0, supremum=0.0, norm=0.0)
    # the rule also carries the p' gauge, which decays like exp(-q_minus |z|^2)
    nrm = _norm_solve(f, p, tol, decay=q.p_minus)
    rule = nrm.rule
    exact, witness = _dual_values(f, p, nrm.value, rule, tol)
    exact2, witness2 = _dual_values(f, p, nrm.value, rule.refined(1, 1), tol)
    err = max(abs(exact2 - exact), abs(witness2 - witness)) + 2 * nrm.quadrature_error
    return ModularReport(witness, err, upper_bound=4 / math.pi * nrm.value, supremum=exact,
                         norm=nrm.value, rule=rule)
