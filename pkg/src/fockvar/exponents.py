"""Variable exponents p(z) on the complex plane.

Four shipped families plus a conjugate wrapper::

    constant(v)                 p(z) = v
    log_decay(base, amp)        p(z) = base + amp / log(e + |z|)
    radial_bump(base, amp, r)   p(z) = base + amp * max(0, 1 - |z|/r)
    expression(text, ...)       closed grammar, see ``fockvar._expr``

Every exponent carries declared bounds ``p_minus <= p(z) <= p_plus`` and an
optional limit ``p_infinity``.  Values are immutable and evaluation is pure.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _expr
from .reports import VerificationReport

__all__ = [
    "VariableExponent", "ExponentError", "ExponentBandWarning",
    "constant", "log_decay", "radial_bump", "expression", "custom",
    "evaluate_exponent", "conjugate", "check_log_holder_local",
    "check_log_holder_decay", "from_json", "reference_grid",
]

BAND_SLACK = 1e-12


class ExponentError(ValueError):
    pass


class ExponentBandWarning(UserWarning):
    """Raw exponent value left the declared [p_minus, p_plus] band."""


def reference_grid(half_width=8.0, n=33):
    x = np.linspace(-half_width, half_width, n)
    X, Y = np.meshgrid(x, x)
    return (X + 1j * Y).ravel()


@dataclass(frozen=True)
class VariableExponent:
    kind: str
    params: tuple
    p_minus: float
    p_plus: float
    p_infinity: float = None
    _fn: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not (1.0 <= self.p_minus <= self.p_plus):
            raise ExponentError(f"need 1 <= p_minus <= p_plus, got {self.p_minus}, {self.p_plus}")
        if not math.isfinite(self.p_plus):
            raise ExponentError("exponents unbounded above are not supported")
        if self.p_infinity is not None and not (1.0 <= self.p_infinity < math.inf):
            raise ExponentError("p_infinity must lie in [1, inf)")
        raw = self.raw(reference_grid())
        if np.any(raw < self.p_minus - BAND_SLACK) or np.any(raw > self.p_plus + BAND_SLACK):
            raise ExponentError(
                f"{self.kind} exponent leaves its declared band "
                f"[{self.p_minus}, {self.p_plus}] on the reference grid")

    def raw(self, z):
        z = np.asarray(z, dtype=complex)
        k, a = self.kind, self.params
        if k == "constant":
            return np.full(z.shape, a[0])
        if k == "log_decay":
            return a[0] + a[1] / np.log(np.e + np.abs(z))
        if k == "radial_bump":
            return a[0] + a[1] * np.maximum(0.0, 1.0 - np.abs(z) / a[2])
        if k == "expr":
            try:
                return np.broadcast_to(_expr.evaluate(a[1], z), z.shape).astype(float)
            except _expr.ExpressionError as exc:
                raise ExponentError(str(exc)) from exc
        if k == "conjugate":
            q = a[0](z)
            return q / (q - 1.0)
        if k == "custom":
            return np.asarray(self._fn(z), dtype=float)
        raise ExponentError(f"unknown exponent kind {k!r}")

    def __call__(self, z):
        """Vectorised p(z), clamped to the declared band."""
        raw = self.raw(z)
        if np.any(raw < self.p_minus - BAND_SLACK) or np.any(raw > self.p_plus + BAND_SLACK):
            warnings.warn(f"{self.kind} exponent left [{self.p_minus}, {self.p_plus}]; clamped",
                          ExponentBandWarning, stacklevel=2)
        return np.clip(raw, self.p_minus, self.p_plus)

    @property
    def is_constant(self):
        return self.p_minus == self.p_plus

    @property
    def breakpoints(self):
        """Radii where p is not smooth; quadrature panels split there."""
        if self.kind == "radial_bump":
            return (self.params[2],)
        if self.kind == "conjugate":
            return self.params[0].breakpoints
        return ()

    def to_json(self):
        k, a = self.kind, self.params
        if k == "constant":
            return {"const": a[0]}
        if k == "log_decay":
            return {"log_decay": {"base": a[0], "amp": a[1]}}
        if k == "radial_bump":
            return {"radial_bump": {"base": a[0], "amp": a[1], "radius": a[2]}}
        if k == "expr":
            out = {"expr": a[0], "p_minus": self.p_minus, "p_plus": self.p_plus}
            if self.p_infinity is not None:
                out["p_inf"] = self.p_infinity
            return out
        if k == "conjugate":
            return {"conjugate": a[0].to_json()}
        return {"custom": a[0]}


def constant(value):
    value = float(value)
    return VariableExponent("constant", (value,), value, value, value)


def log_decay(base, amp):
    base, amp = float(base), float(amp)
    lo, hi = (base, base + amp) if amp >= 0 else (base + amp, base)
    return VariableExponent("log_decay", (base, amp), lo, hi, base)


def radial_bump(base, amp, radius):
    base, amp, radius = float(base), float(amp), float(radius)
    if radius <= 0:
        raise ExponentError("radius must be positive")
    lo, hi = (base, base + amp) if amp >= 0 else (base + amp, base)
    return VariableExponent("radial_bump", (base, amp, radius), lo, hi, base)


def expression(text, p_minus, p_plus, p_infinity=None):
    """Exponent from the closed expression grammar, e.g.
    ``"2 + 1/log(2.718281828459045 + abs(z))"``."""
    try:
        tree = _expr.parse(text)
    except _expr.ExpressionError as exc:
        raise ExponentError(str(exc)) from exc
    return VariableExponent("expr", (text, tree), float(p_minus), float(p_plus),
                            None if p_infinity is None else float(p_infinity))


def custom(fn, p_minus, p_plus, p_infinity=None, name="custom"):
    """Exponent backed by a vectorised Python callable (test fixtures,
    discontinuous examples).  ``name`` keys equality and hashing."""
    return VariableExponent("custom", (name,), float(p_minus), float(p_plus),
                            None if p_infinity is None else float(p_infinity), fn)


def from_json(obj):
    if not isinstance(obj, dict) or len(obj) == 0:
        raise ExponentError(f"not an exponent object: {obj!r}")
    try:
        if "const" in obj:
            return constant(obj["const"])
        if "log_decay" in obj:
            d = obj["log_decay"]
            return log_decay(d["base"], d["amp"])
        if "radial_bump" in obj:
            d = obj["radial_bump"]
            return radial_bump(d["base"], d["amp"], d["radius"])
        if "expr" in obj:
            return expression(obj["expr"], obj["p_minus"], obj["p_plus"], obj.get("p_inf"))
        if "conjugate" in obj:
            return conjugate(from_json(obj["conjugate"]))
    except (KeyError, TypeError) as exc:
        raise ExponentError(f"malformed exponent object: {obj!r}") from exc
    raise ExponentError(f"unknown exponent object: {obj!r}")


def evaluate_exponent(p, z):
    """p(z) at a single point, clamped to the declared band."""
    return float(p(np.array([z]))[0])


def _conj_value(v):
    return math.inf if v == 1.0 else v / (v - 1.0)


def conjugate(p):
    """The pointwise conjugate exponent p' = p/(p-1)."""
    if p.p_minus <= 1.0:
        raise ExponentError("conjugate exponent is unbounded when p_minus = 1")
    if p.kind == "conjugate":
        return p.params[0]
    pinf = None if p.p_infinity is None else _conj_value(p.p_infinity)
    if pinf == math.inf:
        pinf = None
    if p.kind == "constant":
        return constant(_conj_value(p.p_minus))
    return VariableExponent("conjugate", (p,), _conj_value(p.p_plus), _conj_value(p.p_minus), pinf)


def _ball_extrema(p, center, radius, n):
    t = np.linspace(-radius, radius, n)
    X, Y = np.meshgrid(t, t)
    inside = X ** 2 + Y ** 2 <= radius ** 2 * (1 + 1e-14)
    vals = p(center + X[inside] + 1j * Y[inside])
    return vals.min(), vals.max()


def check_log_holder_local(p, ball_radii, centers):
    """Measured constant ``sup_B |B|^(p-(B) - p+(B))`` over the given balls.

    Essential extrema on a ball come from a 33x33 grid, cross-checked at
    65x65 and refined to 129x129 when the two disagree by more than 1e-3.
    """
    ball_radii = list(ball_radii)
    centers = list(centers)
    if not ball_radii or not centers:
        raise ExponentError("need at least one ball")
    report = VerificationReport("log_holder_local", "local log-Hoelder continuity (ball form)")
    worst = 0.0
    for r in ball_radii:
        if not (0 < r <= 0.5):
            raise ExponentError("ball radii must lie in (0, 1/2]")
        for c in centers:
            lo, hi = _ball_extrema(p, complex(c), r, 33)
            lo2, hi2 = _ball_extrema(p, complex(c), r, 65)
            if max(abs(lo - lo2), abs(hi - hi2)) > 1e-3:
                lo, hi = _ball_extrema(p, complex(c), r, 129)
            else:
                lo, hi = min(lo, lo2), max(hi, hi2)
            area = math.pi * r * r
            value = area ** (lo - hi)
            worst = max(worst, value)
            report.add({"center": complex(c), "radius": r}, value)
    report.measured = worst
    return report


def check_log_holder_decay(p, sample_radii, n_angles=16):
    """Measured constant ``sup |p(z) - p_inf| * log(e + |z|)`` over circles."""
    if p.p_infinity is None:
        raise ExponentError("exponent has no declared p_infinity")
    report = VerificationReport("log_holder_decay", "log-Hoelder decay toward p_infinity")
    theta = 2 * np.pi * np.arange(n_angles) / n_angles
    worst = 0.0
    for r in sample_radii:
        z = r * np.exp(1j * theta)
        vals = np.abs(p(z) - p.p_infinity) * np.log(np.e + np.abs(z))
        value = float(vals.max())
        worst = max(worst, value)
        report.add({"radius": float(r)}, value)
    report.measured = worst
    return report
