"""Numerical verification of Hurwitz-zeta modular relations with Xi-kernel
integrals."""

from .errors import (
    BudgetError,
    CapacityError,
    ContractError,
    DomainError,
    PoleError,
    RangeError,
    XiCheckError,
)
from .numeric import DEFAULT_CONTEXT, PrecisionContext, QuadratureResult

__all__ = [
    "BudgetError",
    "CapacityError",
    "ContractError",
    "DEFAULT_CONTEXT",
    "DomainError",
    "PoleError",
    "PrecisionContext",
    "QuadratureResult",
    "RangeError",
    "XiCheckError",
]

__version__ = "0.1.0"
