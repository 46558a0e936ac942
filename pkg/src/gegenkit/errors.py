"""Exception types raised across the package."""


class GegenError(ValueError):
    """Base class for all domain errors raised by gegenkit."""


class InvalidParameter(GegenError):
    """The Gegenbauer order is not admissible (for example it is zero)."""


class InvalidWeight(GegenError):
    """The weight (1 - x^2)^(lambda - 1/2 + shift) is not integrable on [-1, 1]."""


class PoleCrossing(GegenError):
    """A Gamma quotient would pass through a pole."""


class DegenerateRatio(GegenError):
    """A normalising binomial vanishes, so the requested ratio is undefined."""


class DegreeUnderflow(GegenError):
    """More derivatives were requested than the polynomial degree allows."""


class InvalidPair(GegenError):
    """Product indices must satisfy n >= k >= 0."""
