"""Exception hierarchy shared by every module."""


class LogconeError(Exception):
    """Base class for all library errors."""


class LinealityError(LogconeError):
    """Raised when an operation needs a strongly convex cone but got a line."""


class InputTooLargeError(LogconeError):
    """Raised when a combinatorial size guard rejects the input."""


class NotSharpError(LogconeError):
    """Raised when a monoid with nontrivial units is passed where a sharp one is required."""


class NotSaturatedError(LogconeError):
    """Raised when a predicate is only defined here for saturated monoids."""


class NotStronglyConvexError(LogconeError):
    """Raised by :func:`logcone.pans.monoid_of_pan` on non strongly convex pans."""


class InvalidFanError(LogconeError):
    """Raised when a collection of cones fails the fan axioms."""


class PreconditionFailed(LogconeError):
    """Raised when a construction's hypotheses do not hold.

    ``predicate`` names the first violated hypothesis.
    """

    def __init__(self, predicate, message=None):
        self.predicate = predicate
        super().__init__(message or f"precondition failed: {predicate}")


class ExponentNotFound(LogconeError):
    """Raised when no exponent up to ``n_max`` passes the saturation test."""

    def __init__(self, n_max):
        self.n_max = n_max
        super().__init__(f"no saturating exponent found up to n_max={n_max}")


class InputError(LogconeError):
    """Raised for malformed input documents; ``path`` locates the offending JSON node."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
