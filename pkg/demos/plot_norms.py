"""
Modulars and Luxemburg norms
============================

The modular of f weighs |f|^p(z) against exp(-p(z)|z|^2) and divides by the
same integral for f = 1, so constants always have norm one.
"""

import math

import fockvar as fv
from fockvar.modular import modular

# constant exponent: the norm is the p-th root of the modular
p = fv.constant(2)
for n in range(5):
    nrm = fv.luxemburg_norm(fv.monomial(n), p).value
    print(f"||z^{n}||_2 = {nrm:.10f}   sqrt(n!/2^n) = {math.sqrt(math.factorial(n) / 2 ** n):.10f}")

# variable exponents: the norm is found by bisection on rho(f/lam) = 1
f = fv.EntireFunction([1, 0.5j], [(0.3, 0.8 - 0.2j)])
for q in (fv.constant(3), fv.log_decay(2, 1), fv.radial_bump(2, 1, 1)):
    rep = fv.luxemburg_norm(f, q)
    at = modular(f / rep.value, q).value
    print(f"{q.to_json()}: norm {rep.value:.9f} after {rep.iterations} steps, "
          f"rho(f/norm) = {at:.10f}, quadrature error {rep.quadrature_error:.1e}")

# reproducing kernels have the same norm e^{|a|^2} for every constant exponent
k = fv.kernel(0.6 + 0.6j)
print([round(fv.luxemburg_norm(k, fv.constant(v)).value, 10) for v in (1.5, 2, 4)], math.exp(0.72))
