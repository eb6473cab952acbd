"""Exception taxonomy shared across the package.

Every failure raised deliberately by this package derives from
:class:`LlgamesError`, so callers can catch package errors without
swallowing genuine bugs (TypeError, AttributeError, ...).
"""


class LlgamesError(Exception):
    """Base class for all deliberate failures raised by this package."""


class DimensionError(LlgamesError):
    """Profiles, paths, or tables of mismatched size."""


class ParameterError(LlgamesError):
    """A scalar or structural parameter is out of its admissible range."""


class EnumerationBoundError(LlgamesError):
    """An exhaustive enumeration would exceed the configured cap."""


class DeviationError(LlgamesError):
    """Two profiles differ in more than one coordinate where a unilateral
    deviation was required."""


class OrderError(LlgamesError):
    """A required componentwise order relation does not hold."""


class AlignmentError(LlgamesError):
    """A coupling construction produced genuinely negative mass, which
    certifies the game pair violates the ordering assumptions."""


class MissingStatisticError(LlgamesError):
    """A lifted exact computation was requested for a history game that
    does not carry a finite sufficient statistic."""


class MissingBoundsError(LlgamesError):
    """Bounds-mode verification was requested without utility bounds."""


class NumericError(LlgamesError):
    """Overflow, NaN, an excessive solver residual, or an internal
    cross-check disagreement."""


class ContractError(LlgamesError):
    """A property the caller certified (e.g. monotonicity of a supplied
    random variable) was found to be violated."""
