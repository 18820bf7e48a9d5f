"""Exception types raised across the package."""


class Rank1LabError(Exception):
    """Base class for all package errors."""


class BadPermutation(Rank1LabError, ValueError):
    pass


class NotTransitive(Rank1LabError, ValueError):
    """The two gluing permutations do not generate a transitive group."""


class InternalInconsistency(Rank1LabError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class OrbitBudgetExceeded(Rank1LabError, RuntimeError):
    pass


class ConstraintViolated(Rank1LabError, ValueError):
    pass


class NotOrientable(Rank1LabError, ValueError):
    """The pulled-back quadratic differential is not a global square."""


class DegenerateFrame(Rank1LabError, ArithmeticError):
    pass


class InvalidDirection(Rank1LabError, ValueError):
    pass


class ParseError(Rank1LabError, ValueError):
    pass


class ResumeMismatch(Rank1LabError, RuntimeError):
    pass


class IoFailure(Rank1LabError, OSError):
    pass
