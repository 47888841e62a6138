"""Exact finite-precision arithmetic in the Morava stabilizer group S2 at p = 2.

The layers, bottom up: Witt vectors over F4 (witt), the maximal order O2
(order), named elements and subgroups of S2 (stabilizer), finite quotients
Q_n and coset actions (quotients), group rings and ideals over Z/2^m
(groupring, howell), the duality complex and Theta (resolution), and the
Honda formal group law as an independent model of O2 (honda).
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    DescriptorMismatch,
    ExprSyntaxError,
    Indeterminate,
    InsufficientPrecision,
    IntegralityFailure,
    LevelTooSmall,
    Morava2Error,
    NoSolution,
    NonUnit,
    NotInSubgroup,
    SizeCapExceeded,
    UnknownIdentifier,
    WellDefinednessFailure,
)
from .order import OrderElement, format_digits, s_digits  # noqa: F401
from .stabilizer import named_element  # noqa: F401
from .witt import F4, WittNumber  # noqa: F401
