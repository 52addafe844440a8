"""Squares and products of squares in S_n, A_n, GL2/SL2/PSL2(F_p) and small groups."""

from .kernels import BACKEND
from .mat2 import Mat2, MatGroup, brute_force_roots, classify, has_sqrt, sqrt
from .perm import CycleType, Permutation, cycle_type, parity
from .squares import (
    Ambient,
    decompose_two_squares,
    enumerate_roots,
    is_square_in_an,
    is_square_in_sn,
    sqrt_permutation,
)
from .width import builtin_group, enumerate_group, squares_set, width_by_squares

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Ambient",
    "CycleType",
    "Mat2",
    "MatGroup",
    "Permutation",
    "brute_force_roots",
    "builtin_group",
    "classify",
    "cycle_type",
    "decompose_two_squares",
    "enumerate_group",
    "enumerate_roots",
    "has_sqrt",
    "is_square_in_an",
    "is_square_in_sn",
    "parity",
    "sqrt",
    "sqrt_permutation",
    "squares_set",
    "width_by_squares",
]
