"""Exactly evaluable entire functions: a polynomial plus finitely many
reproducing kernels ``K_a(w) = exp(2 w conj(a))``.

Kernel terms centred at 0 are the constant 1 and are folded into the
polynomial, so ``kernel(0) == monomial(0)``.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EntireFunction", "Integrand", "FunctionFormatError", "evaluate", "kernel", "add",
    "scale", "monomial", "from_json", "ZERO",
]

# exp() overflows beyond this
_EXP_MAX = 709.0


class FunctionFormatError(ValueError):
    pass


def _as_complex(x):
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise FunctionFormatError(f"expected [re, im], got {x!r}")
        return complex(float(x[0]), float(x[1]))
    return complex(x)


def _normalize(poly, kernels):
    poly = [complex(c) for c in poly]
    merged = {}
    for c, a in kernels:
        c, a = complex(c), complex(a)
        if a == 0:
            if not poly:
                poly = [0j]
            poly[0] += c
        else:
            merged[a] = merged.get(a, 0j) + c
    while poly and poly[-1] == 0:
        poly.pop()
    terms = tuple(sorted(((c, a) for a, c in merged.items() if c != 0),
                         key=lambda t: (t[1].real, t[1].imag)))
    return tuple(poly), terms


@dataclass(frozen=True, init=False)
class EntireFunction:
    """``sum_k poly[k] z^k + sum_i c_i K_{a_i}(z)``."""

    poly: tuple
    kernels: tuple

    def __init__(self, poly=(), kernels=()):
        p, k = _normalize(poly, kernels)
        object.__setattr__(self, "poly", p)
        object.__setattr__(self, "kernels", k)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for c in reversed(self.poly):
            out = out * z + c
        for c, a in self.kernels:
            arg = 2 * z * np.conj(a)
            if np.any(arg.real > _EXP_MAX):
                raise OverflowError("kernel term exceeds the floating exponent range")
            out = out + c * np.exp(arg)
        return out

    @property
    def degree(self):
        return len(self.poly) - 1

    @property
    def is_zero(self):
        return not self.poly and not self.kernels

    def envelope(self):
        """``(S, d, a)`` with ``|f(z)| <= S max(1,|z|)^d exp(2 a |z|)``."""
        s = sum(abs(c) for c in self.poly) + sum(abs(c) for c, _ in self.kernels)
        a = max((abs(a) for _, a in self.kernels), default=0.0)
        return s, max(self.degree, 0), a

    def __add__(self, other):
        if not isinstance(other, EntireFunction):
            if np.isscalar(other):
                other = EntireFunction([other])
            else:
                return NotImplemented
        n = max(len(self.poly), len(other.poly))
        poly = [(self.poly[i] if i < len(self.poly) else 0) +
                (other.poly[i] if i < len(other.poly) else 0) for i in range(n)]
        return EntireFunction(poly, self.kernels + other.kernels)

    __radd__ = __add__

    def __mul__(self, c):
        if not np.isscalar(c):
            return NotImplemented
        c = complex(c)
        return EntireFunction([c * p for p in self.poly], [(c * k, a) for k, a in self.kernels])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __truediv__(self, c):
        return self * (1 / complex(c))

    def to_json(self):
        out = {}
        if self.poly:
            out["poly"] = [[c.real, c.imag] for c in self.poly]
        if self.kernels:
            out["kernels"] = [{"c": [c.real, c.imag], "a": [a.real, a.imag]} for c, a in self.kernels]
        return out

    def __repr__(self):
        parts = [f"{c:.4g}*z^{k}" for k, c in enumerate(self.poly) if c != 0]
        parts += [f"{c:.4g}*K[{a:.4g}]" for c, a in self.kernels]
        return f"EntireFunction({' + '.join(parts) or '0'})"


ZERO = EntireFunction()


@dataclass(frozen=True)
class Integrand:
    """A measurable function with a growth certificate, for operators and
    modulars applied outside the entire-function class.

    ``fn`` is vectorised; ``|fn(z)| <= bound * max(1,|z|)^degree * exp(2 kernel_radius |z|)``.
    """

    fn: object
    bound: float = 1.0
    degree: float = 0
    kernel_radius: float = 0.0
    name: str = "integrand"

    def __call__(self, z):
        return np.asarray(self.fn(np.asarray(z, dtype=complex)))

    def envelope(self):
        return self.bound, self.degree, self.kernel_radius

    @property
    def is_zero(self):
        return self.bound == 0

    def to_json(self):
        return {"integrand": self.name}


def evaluate(f, z):
    """f(z) at a single point."""
    return complex(f(np.array([z], dtype=complex))[0])


def kernel(a):
    return EntireFunction(kernels=[(1.0, a)])


def add(f, g):
    return f + g


def scale(c, f):
    return f * c


def monomial(n):
    if n < 0:
        raise ValueError("monomial degree must be non-negative")
    return EntireFunction([0] * n + [1])


def from_json(obj):
    if not isinstance(obj, dict) or not set(obj) <= {"poly", "kernels"}:
        raise FunctionFormatError(f"not a function object: {obj!r}")
    try:
        poly = [_as_complex(c) for c in obj.get("poly", [])]
        kernels = [(_as_complex(k["c"]), _as_complex(k["a"])) for k in obj.get("kernels", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise FunctionFormatError(f"malformed function object: {obj!r}") from exc
    if not all(math.isfinite(abs(c)) for c in poly + [c for c, _ in kernels]):
        raise FunctionFormatError("non-finite coefficient")
    return EntireFunction(poly, kernels)
