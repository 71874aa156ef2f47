"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An argument violates a documented precondition."""


class RadiusGuardError(ValueError):
    """A point lies outside the configured evaluation radius.

    Truncated series are only trusted where the geometric tail
    C * r**(N+1) / (1 - r) is controlled, so evaluation outside the
    guard radius is refused rather than extrapolated.
    """


class SingularTargetError(ValueError):
    """The requested target coincides with a singularity of the formula."""
