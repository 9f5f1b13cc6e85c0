"""Exception hierarchy shared by all modules."""


class LaurentGrothError(Exception):
    """Base class for all library errors."""


class UsageError(LaurentGrothError):
    """Mismatched dimensions, unknown labels, incompatible orders."""


class ValidationError(LaurentGrothError):
    """Input data violating a structural invariant (inhomogeneous relation,
    non-commuting action, malformed JSON payload)."""


class WeightSearchError(LaurentGrothError):
    """No integer weight certificate found within the search budget."""


class SupportViolationError(LaurentGrothError):
    """A term lies outside the declared support certificate."""


class ZeroProbeError(LaurentGrothError):
    """No nonzero coefficient found below the probe height; the series is
    apparently zero and cannot be inverted."""


class SingularConstantTermError(LaurentGrothError):
    """The constant-term scalar matrix is singular over Q."""


class TruncationError(LaurentGrothError):
    """A coefficient beyond the trusted truncation height was queried."""
