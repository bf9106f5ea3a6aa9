"""Exact Burnside-ring computations for classes of quasi-split tori."""

from __future__ import annotations

from ._ints import IntegerOverflowError
from .burnside import BurnsideElement, from_gset, from_marks, induce_b, outer_young, restrict_b
from .gposet import GPoset, lefschetz, omega_flag, omega_leq, reduced_lefschetz, two_star_n
from .gset import GSet, coset_space, natural, power
from .permgroup import CycleType, Permutation, PermutationGroup, symmetric_group
from .powerseries import LPolynomial, Series, exp_lpoly, minus_one_power, star_inverse, star_mul
from .subgroups import SubgroupTable, subgroup_table, symmetric_table
from .toruslab import lambda_op, point_count, torus_class_binomial, torus_class_lambda, verify_theorem

__all__ = [
    "BurnsideElement", "CycleType", "GPoset", "GSet", "IntegerOverflowError", "LPolynomial",
    "Permutation", "PermutationGroup", "Series", "SubgroupTable",
    "coset_space", "exp_lpoly", "from_gset", "from_marks", "induce_b", "lambda_op", "lefschetz",
    "minus_one_power", "natural", "omega_flag", "omega_leq", "outer_young", "point_count", "power",
    "reduced_lefschetz", "restrict_b", "star_inverse", "star_mul", "subgroup_table", "symmetric_group",
    "symmetric_table", "torus_class_binomial", "torus_class_lambda", "two_star_n", "verify_theorem",
]
