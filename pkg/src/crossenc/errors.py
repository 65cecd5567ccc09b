"""Exception hierarchy shared across the package.

The split matters for the CLI, which maps error families to exit codes:
config problems -> 2, data/argument problems -> 3, numeric failures -> 4.
"""


class CrossencError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(CrossencError):
    """Array dimensions do not match what an operation requires."""


class ArgumentError(CrossencError):
    """An argument is outside its documented domain."""


class NumericError(CrossencError):
    """A numeric contract was violated (non-finite input, zero norm, ...)."""


class SingularMatrixError(NumericError):
    """A positive-definite factorization failed even after a jitter retry."""


class DegenerateVoxelError(NumericError):
    """A response vector has zero sum of squares, so R-squared is undefined."""


class UndefinedStatisticError(NumericError):
    """A test statistic is undefined (too few samples or zero variance)."""


class ConfigError(CrossencError):
    """A run configuration is malformed or fails schema validation."""


class DataError(CrossencError):
    """An input file is missing, malformed, or inconsistent with the config."""
