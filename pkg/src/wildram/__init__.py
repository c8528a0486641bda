"""wildram: exact wild-ramification computations for local fields k((t)).

Computes jump filtrations (upper and lower numbering), different degrees and
genera for degree-p and degree-p^2 extensions given by Artin-Schreier elements
and length-2 Witt vectors, with independent ghost-component and power-series
Galois-action oracles.
"""

from .algebra import FieldCtx, FieldElem, LaurentSeries, parse_series, render_series
from .errors import (
    ContextMismatch,
    CoverError,
    DomainError,
    EqualInputs,
    InsufficientPrecision,
    NotReduced,
    OracleCheckError,
    ParseError,
    RootNotInField,
    WildramError,
)

__all__ = [
    "FieldCtx",
    "FieldElem",
    "LaurentSeries",
    "parse_series",
    "render_series",
    "WildramError",
    "ContextMismatch",
    "InsufficientPrecision",
    "RootNotInField",
    "DomainError",
    "NotReduced",
    "EqualInputs",
    "CoverError",
    "OracleCheckError",
    "ParseError",
]

__version__ = "0.1.0"
