"""Exception hierarchy.

Every domain error derives from :class:`KreinError`; the CLI reports the
class name on stderr and exits with :attr:`KreinError.exit_code`.
"""


class KreinError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class DimensionMismatch(KreinError, ValueError):
    """Operands live in spaces of different dimension."""


class NonConvergence(KreinError, ArithmeticError):
    """An iterative kernel exhausted its budget before meeting tolerance."""


class NotJHermitian(KreinError, ValueError):
    """A J-Hermitian operand was required."""


class OutOfRegime(KreinError, ValueError):
    """Closed-form 2x2 eigenvectors requested outside a > 0, a^2 > |b|^2."""


class NotSingular(KreinError, ValueError):
    """A null vector was requested for a matrix with nonzero determinant."""


class NotDiagonalizable(KreinError, ValueError):
    """No J-orthonormal eigenbasis exists (broken or exceptional phase)."""


class UnsupportedDimension(KreinError, ValueError):
    """Operation only defined for a particular size or signature."""


class ParseError(KreinError, ValueError):
    """Model file or flag is syntactically malformed."""

    exit_code = 2


class ValidationError(KreinError, ValueError):
    """Input parses but violates a structural invariant."""

    exit_code = 2
