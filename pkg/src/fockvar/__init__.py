"""Numerics for variable-exponent Fock spaces.

Quick start::

    from fockvar import constant, monomial, luxemburg_norm
    luxemburg_norm(monomial(1), constant(2)).value   # 0.7071067811...
"""

from .exponents import (VariableExponent, check_log_holder_decay, check_log_holder_local,
                        conjugate, constant, evaluate_exponent, expression, log_decay,
                        radial_bump)
from .functions import EntireFunction, evaluate, kernel, monomial
from .modular import (ModularReport, gauge_constant, holder_margin, luxemburg_norm,
                      pairing, triple_norm)
from .operators import (MixedPolynomial, WeightSpec, apr_product, evaluation_bound_check,
                        h_operator, inclusion_check, j_operator, kernel_density_probe,
                        mean_value_check, project_monomial, project_pointwise,
                        projection_boundedness_sample)
from .quadrature import integrate_disk, integrate_plane
from .reports import VerificationReport

__version__ = "0.1.0"
