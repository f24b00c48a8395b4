"""Exception hierarchy.

Every error raised by the library derives from :class:`GeometryError`, so the
CLI can map "bad input" to one exit code without enumerating cases.
"""


class GeometryError(ValueError):
    pass


class PoleError(GeometryError):
    """A generalized tangent/cotangent was evaluated at a pole."""


class DomainError(GeometryError):
    """Argument outside the range of an inverse function."""


class InvalidPoint(GeometryError):
    pass


class AntipodalError(GeometryError):
    pass


class DegenerateError(GeometryError):
    pass


class NotATriangle(GeometryError):
    pass


class CollinearError(GeometryError):
    pass


class NoCircumcircle(GeometryError):
    """Three hyperbolic points lie on a horocycle or an equidistant curve."""


class NotConvex(GeometryError):
    pass


class SideTooLong(GeometryError):
    pass


class NotInHemisphere(GeometryError):
    pass


class TooFewVertices(GeometryError):
    pass


class DuplicateVertex(GeometryError):
    pass


class RadiusTooLarge(GeometryError):
    pass


class GenerationFailed(GeometryError):
    pass


class EmptyInput(GeometryError):
    pass


class FrakEInconsistent(GeometryError):
    """The side-length parameter does not bound the polygon's sides as required."""


class InvalidFrakE(GeometryError):
    pass


class ChordTooLong(GeometryError):
    pass


class ConvexityViolated(GeometryError):
    pass


class RadiusOverflow(GeometryError):
    pass


class DegenerateTheta(GeometryError):
    pass


class ToleranceExceeded(GeometryError):
    pass
