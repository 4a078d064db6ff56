"""Exception types raised by quadcycle.

Every precondition failure surfaces as one of these; nothing is allowed to
leak out as a silent NaN.
"""


class QuadCycleError(ValueError):
    """Base class for all quadcycle errors."""


class InvalidMap(QuadCycleError):
    """The quadratic coefficient is zero or a coefficient is not finite."""


class NotCubic(QuadCycleError):
    pass


class ComplexRoots(QuadCycleError):
    """The cubic has a pair of non-real roots."""


class PoleAtExcludedPoint(QuadCycleError):
    """A ratio argument hit one of the excluded values 0 or -1."""


class NoCycleExists(QuadCycleError):
    """The perturbed discriminant is negative, so there is no 3-cycle."""


class BranchMismatch(QuadCycleError):
    """The requested branch does not exist for this discriminant."""


class DegenerateTriple(QuadCycleError):
    """Two of the three points coincide."""


class NegativeDelta(QuadCycleError):
    pass


class CriticalPoint(QuadCycleError):
    """The derivative of the map vanishes at the requested point."""


class NotDegenerate(QuadCycleError):
    """The map's perturbed discriminant is not zero within tolerance."""


class DivisionResidual(QuadCycleError):
    """Polynomial long division left a remainder that should have vanished."""


class OrbitGroupingFailure(QuadCycleError):
    """A period-3 point's orbit did not close on the other computed points."""


class DegenerateFamily(QuadCycleError):
    """A family parameter produced a map with zero quadratic coefficient."""
