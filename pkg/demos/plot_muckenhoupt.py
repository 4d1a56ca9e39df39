"""
The Gaussian weight is not a Muckenhoupt weight
===============================================

The A_{p,r} product (avg w)(avg w^{-1/(p-1)})^{p-1} over unit balls stays
bounded for doubling weights such as (1+|z|)^gamma but grows without bound for
exp(-|z|^2) as the ball moves out.
"""

import fockvar as fv

gauss, power = fv.WeightSpec("gaussian", 1.0), fv.WeightSpec("power", 1.5)
print("center   gaussian(1)        power(1.5)")
for c in (0, 2, 4, 6, 8):
    print(f"{c:6d}   {fv.apr_product(gauss, 2, 1, c):<18.6g} {fv.apr_product(power, 2, 1, c):.6f}")

# the product does not see the weight's scale
print(fv.apr_product(gauss.scaled(1e6), 2, 1, 4) / fv.apr_product(gauss, 2, 1, 4))
