"""Exception hierarchy shared by every module of the package."""


class HurwitzLabError(Exception):
    """Base class for all errors raised by hurwitz_lab."""


class NotDivisible(HurwitzLabError, ArithmeticError):
    """Exact polynomial division left a non-zero remainder."""


class NonUnitConstantTerm(HurwitzLabError, ArithmeticError):
    """A truncated power series whose constant term is not 1 cannot be inverted."""


class TooLarge(HurwitzLabError, MemoryError):
    """A polynomial exceeded the configured term-count ceiling."""


class WeightMismatch(HurwitzLabError, ValueError):
    """Partitions that must have equal weight do not."""


class EmptyProfileList(HurwitzLabError, ValueError):
    """A Hurwitz number was requested for zero ramification profiles."""


class RepeatedPoint(HurwitzLabError, ValueError):
    """Evaluation points that must be pairwise distinct are not."""


class InsufficientParameters(HurwitzLabError, ValueError):
    """A finite parameter list c_1..c_M is too short for the requested weight."""


class Underdetermined(HurwitzLabError, ValueError):
    """The coefficient system has fewer independent equations than unknowns (N < n)."""


class InconsistentSystem(HurwitzLabError, ArithmeticError):
    """The coefficient system admits no exact solution."""


class TruncationError(HurwitzLabError, ValueError):
    """A β-degree beyond the truncation order D was requested."""
