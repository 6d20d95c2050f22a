"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument has the wrong shape, length or a non-finite value."""


class DomainError(ValueError):
    """A value lies outside its admissible range.

    ``index`` is set when the offending value is an element of a vector.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NumericError(ArithmeticError):
    """A matrix factorization failed."""


class ConfigError(ValueError):
    """Schema violation in an experiment config; ``key`` names the offending entry."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
