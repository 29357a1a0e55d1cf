"""Exception hierarchy shared by the whole package.

The command-line front end maps these classes onto its exit codes, so new
errors should subclass the closest existing category rather than raising
bare built-ins.
"""


class StructmatError(Exception):
    """Base class for every error raised by structmat."""


class DimensionMismatchError(StructmatError, ValueError):
    """Operand shapes are incompatible for the requested operation."""


class SingularMatrixError(StructmatError, ArithmeticError):
    """A matrix is singular (or numerically singular) where a nonsingular
    one is required."""


class BreakdownError(StructmatError, ArithmeticError):
    """An iterative or recursive solver hit a zero (or negligible) pivot."""


class UnderdeterminedError(StructmatError, ValueError):
    """A least-squares routine received a system with no more rows than
    columns."""


class RankDeficientError(StructmatError, ArithmeticError):
    """A least-squares routine detected numerical rank deficiency."""


class UnsupportedOperationError(StructmatError, TypeError):
    """The operation is deliberately not provided for this type."""


class MatrixFileError(StructmatError, ValueError):
    """A structured-matrix file could not be parsed."""
