"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Input violates a geometric precondition (not interior, not a face, ...)."""


class NonConvergenceError(RuntimeError):
    """A numerical limit did not settle within tolerance."""


class AmbiguousLimitError(NonConvergenceError):
    """Several inequivalent closed-form horofunctions match a sequence limit."""

    def __init__(self, message: str, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)
