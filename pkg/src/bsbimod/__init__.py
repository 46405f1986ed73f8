"""
Exact computational toolkit for Bott-Samelson bimodules over symmetric
groups: subexpression combinatorics, localization membership, Delta/nabla
bases, graded-freeness algorithms, string modules, and the D-sequence
counterexample pipeline.
"""

__version__ = "0.1.0"

from .polyring import Polynomial, RationalFn, GradedRank
from .coxeter import Permutation, Reflection, ReflExpr
from .subexpr import Subexpr, SubSet, SubGraph, ENUM_IMPLEMENTATION

__all__ = [
    "Polynomial", "RationalFn", "GradedRank",
    "Permutation", "Reflection", "ReflExpr",
    "Subexpr", "SubSet", "SubGraph", "ENUM_IMPLEMENTATION",
]
