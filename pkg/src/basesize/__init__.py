"""Base sizes of permutation groups acting on cosets.

Small cases are settled by computation with permutations (witness search,
double coset censuses, exhaustive search); large ones by exact rational
fixed point ratio estimates over stored conjugacy class data.
"""

from .base import (BaseSizeCertificate, BaseSizeResult, Policy, exact_base_size,
                   lower_bound, survey, verify_witness, witness_search)
from .classdata import ClassDataError, ClassTable, SubgroupClassData, lemma_bound, qhat
from .classdb import ClassData, Discrepancy, StrictModeError, load_directory
from .groups import CosetSpace, GeneratedGroup, RandomSource
from .perms import Permutation
from .reports import load_data, run_suite
from .subgroups import core_in, double_cosets, intersect, is_core_free, is_soluble

__all__ = [
    "BaseSizeCertificate", "BaseSizeResult", "ClassData", "ClassDataError", "ClassTable",
    "CosetSpace", "Discrepancy", "GeneratedGroup", "Permutation", "Policy", "RandomSource",
    "StrictModeError", "SubgroupClassData", "core_in", "double_cosets", "exact_base_size",
    "intersect", "is_core_free", "is_soluble", "lemma_bound", "load_data", "load_directory",
    "lower_bound", "qhat", "run_suite", "survey", "verify_witness", "witness_search",
]
