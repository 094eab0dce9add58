"""Domain types: polynomials, matrices, critical-point specs."""
from critval.models.critical import CriticalSpec
from critval.models.matrix import PolyMatrix, RatMatrix
from critval.models.polynomial import (
    Polynomial,
    RationalFunction,
    VariableId,
    rf_equal,
    x_var,
    y_var,
    z_var,
)

__all__ = [
    "CriticalSpec",
    "PolyMatrix",
    "RatMatrix",
    "Polynomial",
    "RationalFunction",
    "VariableId",
    "rf_equal",
    "x_var",
    "y_var",
    "z_var",
]
