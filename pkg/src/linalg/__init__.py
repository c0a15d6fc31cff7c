"""Dense complex linear algebra: the oracle layer."""

from .operators import (
    HermitianSpectrum,
    Operator,
    hermitian_eig,
    is_psd,
    matrix_exp,
    matrix_function,
    matrix_power,
    operator_norm,
    resolvent_shift,
)
from .interchange import load_operator, operator_from_dict, operator_to_dict

__all__ = [
    "HermitianSpectrum",
    "Operator",
    "hermitian_eig",
    "is_psd",
    "matrix_exp",
    "matrix_function",
    "matrix_power",
    "operator_norm",
    "resolvent_shift",
    "load_operator",
    "operator_from_dict",
    "operator_to_dict",
]
