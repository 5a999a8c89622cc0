"""Exact arithmetic: rationals, quadratic fields, polynomials, Q(t), integer lattices."""
from fractions import Fraction

from .integers import (
    FactorizationError,
    field_discriminant,
    hermite_normal_form,
    iroot,
    is_square,
    is_squarefree,
    kernel_basis,
    squarefree_part,
    xgcd,
)
from .polynomials import MultiPoly, UPoly, poly_gcd
from .quadfield import (
    QuadElement,
    integral_basis_coords,
    log_abs,
    module_norm_hnf,
    module_norm_hnf_full,
    omega,
    qf_norm,
    rational_sqrt,
)
from .ratfunc import PoleError, RatFunc, rf_arith

BigRational = Fraction

__all__ = [
    "BigRational",
    "FactorizationError",
    "Fraction",
    "MultiPoly",
    "PoleError",
    "QuadElement",
    "RatFunc",
    "UPoly",
    "field_discriminant",
    "hermite_normal_form",
    "integral_basis_coords",
    "iroot",
    "is_square",
    "is_squarefree",
    "kernel_basis",
    "log_abs",
    "module_norm_hnf",
    "module_norm_hnf_full",
    "omega",
    "poly_gcd",
    "qf_norm",
    "rational_sqrt",
    "rf_arith",
    "squarefree_part",
    "xgcd",
]
