"""Nilpotent Toeplitz operators on Bergman spaces of the Reinhardt domains Omega_m in C^2.

Bergman-space structure reduces to the exponent lattice R_m (:mod:`.lattice`)
and the radial moments M(s, t) (:mod:`.moments`); Toeplitz operators with
monomial symbols become weighted shifts on R_m (:mod:`.operator`).
"""

from .lattice import (
    DomainSpec,
    MultiIndex,
    diagonal_count,
    lattice_window,
    member,
    nilpotency_degree_lattice,
    shift_stays,
)
from .moments import Divergent, MomentValue, bound_constant, moment, mu_x, mu_y, mu_z
from .operator import (
    PHI,
    CoefficientVector,
    ShiftOperator,
    Symbol,
    Undefined,
    compose,
    kernel_partial_sum,
    operator_norm_estimate,
    truncated_matrix,
)
from .quadrature import Region, quadrature_oracle
from .verify import degree_scan, verify_proposition, zero_product_search

__version__ = "0.1.0"
