"""
Skew operators on Minkowski space: chiral splitting, closed-form exponential
and logarithm on SO(3,1), singularities of exp, and the field of an
accelerated charge.
"""

from .errors import LorcalError
from .expmap import dexp, exp_chiral, exp_real, log, singularity
from .skew import ChiralOp, Chirality, OpClass, SkewOp, c_map, cbar_map, classify, eigenvalue, star

__version__ = "0.1.0"

__all__ = [
    "ChiralOp", "Chirality", "LorcalError", "OpClass", "SkewOp",
    "c_map", "cbar_map", "classify", "dexp", "eigenvalue", "exp_chiral",
    "exp_real", "log", "singularity", "star",
]
