from .field import DEFAULT_PRIME, QQ, PrimeField, Rationals, field_from_prime
from .matrix import (
    Matrix,
    column_space_basis,
    det,
    inverse,
    kernel_basis,
    left_kernel_basis,
    pfaffian,
    rank,
    rref,
    solve,
)
from .poly import MultiPoly, monomials, poly_det, poly_matrix_eval

__all__ = [
    "DEFAULT_PRIME",
    "QQ",
    "PrimeField",
    "Rationals",
    "field_from_prime",
    "Matrix",
    "column_space_basis",
    "det",
    "inverse",
    "kernel_basis",
    "left_kernel_basis",
    "pfaffian",
    "rank",
    "rref",
    "solve",
    "MultiPoly",
    "monomials",
    "poly_det",
    "poly_matrix_eval",
]
