"""Exception hierarchy shared by every module in the package."""


class RankBoundsError(Exception):
    """Base class for all errors raised by rankbounds."""


class InvalidInput(RankBoundsError, ValueError):
    """Arguments violate a documented precondition."""


class TieError(InvalidInput):
    """Two observations share the same value, so ranks are not defined."""

    def __init__(self, value, message=None):
        self.value = value
        super().__init__(message or f"duplicated value {value!r}; ranks require distinct data")


class JitterFailure(RankBoundsError):
    """Tie-breaking perturbations did not produce distinct values."""


class DegenerateVariance(RankBoundsError, ValueError):
    """The null variance of a statistic is zero for the given sample sizes."""


class EmptyObserved(InvalidInput):
    """No observed values are available where at least one is required."""


class RangeError(InvalidInput):
    """An index argument lies outside its admissible range."""


class ExplosionError(RankBoundsError):
    """An exhaustive enumeration would exceed the configured cap."""


class ParseError(InvalidInput):
    """A dataset line could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LabelError(InvalidInput):
    """A dataset does not contain exactly the sample labels required."""
