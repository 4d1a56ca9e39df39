"""
The projection P and its companions H and J
===========================================

P reproduces entire functions and kills the non-analytic part of
w^m conj(w)^n.  H is a Gaussian convolution and J integrates the modulus of
P's kernel.
"""

import math

import numpy as np

import fockvar as fv
from fockvar.operators import project_samples

z = 0.8 - 0.5j
f = fv.EntireFunction([1, -2, 0.5j], [(0.7, 1j)])
print("P f(z) - f(z) =", abs(fv.project_pointwise(f, z) - fv.evaluate(f, z)))

for m, n in [(1, 1), (3, 1), (2, 3), (4, 2)]:
    g = fv.MixedPolynomial({(m, n): 1})
    exact = fv.project_monomial(m, n)
    print(f"P(w^{m} conj(w)^{n}) = {exact!r}; quadrature at z: "
          f"{fv.project_pointwise(g, z):.10f} vs {fv.evaluate(exact, z):.10f}")

samples = project_samples(fv.MixedPolynomial({(0, 1): 1, (2, 0): 1}), np.linspace(-1, 1, 5))
print("P(conj(w) + w^2) on the real segment:", np.round(np.real(samples.values), 10))

for w in (0, 1, 2j):
    print(f"J1({w}) = {fv.j_operator(fv.monomial(0), w):.10f}, "
          f"closed form {math.pi / 2 * math.exp(abs(w) ** 2 / 2):.10f}")
print("H1 at three points:", [round(fv.h_operator(fv.monomial(0), c), 10) for c in (0, 3, -2j)])
