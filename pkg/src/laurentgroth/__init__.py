"""Exact cone-supported formal Laurent series and graded Grothendieck-group calculations.

The package is organised bottom-up:

- ``order``: additive total orders on Z^n (lex and integer-matrix orders).
- ``support``: finitely generated monoid support certificates with ordered
  lattice-point enumeration.
- ``series``: the ring of formal Laurent series with lazy exact coefficients,
  inversion and the adic topology.
- ``grothmod``: Grothendieck-group vectors and series-matrix inversion.
- ``grmod``: positive Z^n-graded algebras presented by quivers with relations,
  graded dimensions and Cartan matrices.
- ``homalg``: truncation functors, composition series, projective covers,
  minimal resolutions, chain complexes and Euler classes.
- ``cli``: JSON-driven command line front end.
"""

from .errors import (
    LaurentGrothError,
    UsageError,
    ValidationError,
    WeightSearchError,
    SupportViolationError,
    ZeroProbeError,
    SingularConstantTermError,
    TruncationError,
)

__all__ = [
    "LaurentGrothError",
    "UsageError",
    "ValidationError",
    "WeightSearchError",
    "SupportViolationError",
    "ZeroProbeError",
    "SingularConstantTermError",
    "TruncationError",
]
