"""
Hoelder inequality and the dual-pairing norm
============================================

The pairing <f, g> = (2/pi) int f conj(g) exp(-2|z|^2) dA is bounded by
2 ||f||_p ||g||_p'.  Maximising it over the unit ball of the conjugate space
gives a second norm, which sits between the Luxemburg norm and 4/pi times it
for constant exponents.  For some variable exponents the lower side fails.
"""

import fockvar as fv

f, g = fv.kernel(1), fv.EntireFunction([0.2, 1, -0.4j])
for p in (fv.constant(2), fv.constant(3), fv.log_decay(1.5, 1.5)):
    rep = fv.holder_margin(f, g, p)
    c = rep.cases[0]
    print(f"{p.to_json()}: |<f,g>| pi/2 = {c.lhs:.6f} <= {c.rhs:.6f}  (margin {c.margin:.3e})")

print()
print("exponent                          witness/norm  supremum/norm  (4/pi)")
for p in (fv.constant(2), fv.constant(3), fv.log_decay(2, 1), fv.radial_bump(2, 1, 1)):
    rep = fv.triple_norm(fv.monomial(1), p)
    print(f"{str(p.to_json()):<34s}{rep.value / rep.norm:12.6f}{rep.supremum / rep.norm:15.6f}"
          f"{rep.upper_bound / rep.norm:9.4f}")
