"""Exception and warning types shared across the package."""


class TspnError(Exception):
    """Base class for errors raised by this package."""


class UnboundedObjective(TspnError):
    """The LP objective decreases without bound on the feasible set.

    Well-formed tour/path programs cannot trigger this (their objectives
    are nonnegative side-length combinations); it indicates a malformed
    hand-built problem.
    """


class NumericallyIll(TspnError):
    """Pivot or tolerance breakdown in the LP solver.

    Callers may retry with a perturbed instance or a different seed.
    """


class VerticalInFrame(TspnError):
    """A region's supporting line is vertical in the rotated frame.

    The slope-intercept constraint rows are undefined there; the sweep
    drivers respond by nudging the offending frame angle.
    """

    def __init__(self, region_index: int, angle: float):
        self.region_index = region_index
        self.angle = angle
        super().__init__(
            f"region {region_index} is vertical in the frame at angle {angle!r}"
        )


class TooManyConstraints(TspnError):
    """The brute-force basis enumeration refuses problems this large."""


class DegenerateInstance(UserWarning):
    """All regions share a common point, so the optimum has zero length.

    Emitted as a warning, not an error: the zero-size rectangle is still
    a correct answer, but no approximation ratio can be certified.
    """
