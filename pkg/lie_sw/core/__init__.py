"""精确代数内核: Q(√d) 标量、矩阵、多项式与 Gröbner 基"""

from .field import FieldScalar, FieldMismatchError
from .matrix import Matrix, SingularMatrixError, DimensionMismatchError
from .poly import PolyRing, MultiPoly, NonlinearInputError
from .groebner import buchberger, reduce, s_polynomial, GroebnerBudgetExceeded
from .linear import reduce_linear, reduces_to_zero_linearly, LinearReduction

__all__ = [
    "FieldScalar",
    "FieldMismatchError",
    "Matrix",
    "SingularMatrixError",
    "DimensionMismatchError",
    "PolyRing",
    "MultiPoly",
    "NonlinearInputError",
    "buchberger",
    "reduce",
    "s_polynomial",
    "GroebnerBudgetExceeded",
    "reduce_linear",
    "reduces_to_zero_linearly",
    "LinearReduction",
]
