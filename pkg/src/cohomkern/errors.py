"""Exception types raised across the package.

Configuration problems (bad group parameters, degree too large, a table that
is not a cocycle) derive from ``ConfigError`` so the command line can map them
to exit status 2. The remaining classes flag arithmetic situations that the
constructions are supposed to rule out; seeing one usually means a bug.
"""

from __future__ import annotations


class CohomKernError(Exception):
    """Base class for every error raised by cohomkern."""


class ConfigError(CohomKernError, ValueError):
    """Invalid user input: parameters, degrees, files."""


class InvalidGroup(ConfigError):
    pass


class InvalidOrder(InvalidGroup):
    """The multiplier t does not have multiplicative order s modulo d."""


class FamilyMismatch(InvalidGroup):
    pass


class EvenD(InvalidGroup):
    pass


class DegreeTooLarge(ConfigError):
    pass


class NotACocycle(ConfigError):
    pass


class UnsupportedDegree(CohomKernError, ValueError):
    pass


class ModulusMismatch(CohomKernError, ValueError):
    pass


class NoSolution(CohomKernError, ArithmeticError):
    """A right-hand side is not in the row span of the matrix."""


class NotContained(CohomKernError, ArithmeticError):
    """Denominator of a subquotient is not inside the numerator."""


class NotFree(CohomKernError, ArithmeticError):
    pass


class NotStable(CohomKernError, ArithmeticError):
    """A basis does not span a submodule closed under the group action."""


class ConstructionFailure(CohomKernError, RuntimeError):
    pass


class LiftFailure(CohomKernError, ArithmeticError):
    pass


class SectionFailure(CohomKernError, ArithmeticError):
    pass


class OutsideImage(CohomKernError, ArithmeticError):
    pass


class HypothesisFailure(CohomKernError):
    """A Bockstein prerequisite of the six-term sequence does not vanish."""
