"""Euler characteristics and Akashi series over Iwasawa algebras.

Exact p-adic linear algebra at a fixed working precision p^N, power series
over Z_p with Weierstrass theory and character twists, finite-level Euler
characteristics of torsion modules over Z_p[[X]] and of crossed-product
modules of false-Tate type, and searches for twisting characters that make
every requested level finite.
"""

__version__ = "0.1.0"

from .errors import (
    BudgetExhaustedError,
    DivisorDivisibleByPError,
    IwalabError,
    MixedContextError,
    NotAUnitError,
    NotSquareError,
    ParseError,
    PrecisionExhaustedError,
    SizeCapExceededError,
    TailUncertifiedError,
    ValidationError,
    ZeroDeterminantError,
    ZeroToPrecisionError,
)
from .padic import (
    AT_LEAST_N,
    ElementaryDivisors,
    HomologyOrders,
    PadicContext,
    PadicInt,
    cokernel_kernel_orders,
    smith_form,
    unit_inverse,
    valuation,
)
from .series import (
    Character,
    DEFAULT_TRUNCATION,
    PowerSeries,
    WeierstrassData,
    det_mult_mod_omega,
    evaluate_character,
    lambda_mu,
    omega,
    twist_series,
    weierstrass_divide,
    weierstrass_prepare,
)
from .results import EulerResult, EulerStatus, TwistSearchReport
from .gamma import GammaModule, find_twist, series_matrix_det
from .crossed import CrossedModule, Level, find_twist_crossed
from .kernels import KERNEL_IMPL

__all__ = [
    "AT_LEAST_N",
    "BudgetExhaustedError",
    "Character",
    "CrossedModule",
    "DEFAULT_TRUNCATION",
    "DivisorDivisibleByPError",
    "ElementaryDivisors",
    "EulerResult",
    "EulerStatus",
    "GammaModule",
    "HomologyOrders",
    "IwalabError",
    "KERNEL_IMPL",
    "Level",
    "MixedContextError",
    "NotAUnitError",
    "NotSquareError",
    "PadicContext",
    "PadicInt",
    "ParseError",
    "PowerSeries",
    "PrecisionExhaustedError",
    "SizeCapExceededError",
    "TailUncertifiedError",
    "TwistSearchReport",
    "ValidationError",
    "WeierstrassData",
    "ZeroDeterminantError",
    "ZeroToPrecisionError",
    "cokernel_kernel_orders",
    "det_mult_mod_omega",
    "evaluate_character",
    "find_twist",
    "find_twist_crossed",
    "lambda_mu",
    "omega",
    "series_matrix_det",
    "smith_form",
    "twist_series",
    "unit_inverse",
    "valuation",
    "weierstrass_divide",
    "weierstrass_prepare",
]
