"""Exact Mayer path homology of directed graphs and path complexes."""

from .complexes import (
    Digraph,
    PathComplex,
    parse_digraph,
    parse_simplices,
    path_complex_from_digraph,
    path_complex_from_simplicial,
)
from .cyclotomic import Scalar, cyclotomic_polynomial, q_factorial, q_integer, zeta_power
from .homology import BettiTable, betti, betti_table, brute_force_oracle, poincare_identity_check
from .omega import omega_full, omega_nq

__all__ = [
    "Digraph",
    "PathComplex",
    "Scalar",
    "BettiTable",
    "betti",
    "betti_table",
    "brute_force_oracle",
    "cyclotomic_polynomial",
    "omega_full",
    "omega_nq",
    "parse_digraph",
    "parse_simplices",
    "path_complex_from_digraph",
    "path_complex_from_simplicial",
    "poincare_identity_check",
    "q_factorial",
    "q_integer",
    "zeta_power",
]

__version__ = "0.1.0"
