"""Exception types shared across the package.

Each carries a short machine-parsable reason; the CLI maps them to exit codes.
"""


class ChordInvError(Exception):
    """Base class for every error raised by this package."""

    code = "error"


class MalformedInput(ChordInvError, ValueError):
    code = "malformed-input"


class DimensionMismatch(ChordInvError, ValueError):
    code = "dimension-mismatch"


class SingularMatrix(ChordInvError, ArithmeticError):
    code = "singular-matrix"


class NotSemisimple(ChordInvError):
    code = "not-semisimple"


class NotSemisimpleFamily(ChordInvError, ValueError):
    code = "not-semisimple-family"


class BudgetExceeded(ChordInvError):
    code = "budget-exceeded"


class InvariantViolated(ChordInvError):
    code = "invariant-violated"
