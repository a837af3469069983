"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Base class for all domain errors raised by this package."""


class PreconditionViolation(GeometryError):
    """An operation was called with inputs outside its documented domain."""


class SizeBoundViolation(GeometryError):
    """A length reaches or exceeds the finite timelike diameter of the model plane."""


class DegenerateLeg(GeometryError):
    """A hinge or vertex leg has zero length."""


class NotRealizable(GeometryError):
    """The requested side lengths admit no causal triangle (cosh argument < 1)."""


class ShapeViolation(GeometryError):
    """Side lengths violate the reverse triangle inequality."""


class DimensionMismatch(GeometryError):
    """Vectors or points of different dimensions were combined."""


class NotChronological(GeometryError):
    """Two points are not chronologically related where the operation needs them to be."""


class NotTimelike(GeometryError):
    """A vector or curve is not timelike."""


class NotCausallyRelated(GeometryError):
    """Two points are not causally related where the operation needs them to be."""


class InfiniteTau(GeometryError):
    """A time separation is infinite where a finite value is required."""


class OffsetOutOfRange(GeometryError):
    """A side-point offset lies outside [0, side length]."""


class UnknownBuiltin(GeometryError):
    """No built-in space with the requested name exists."""


class BadParams(GeometryError):
    """Built-in space parameters are malformed."""


class MalformedInput(GeometryError):
    """A finite-space or metric table is structurally invalid."""


class ParseError(GeometryError):
    """A JSON document does not conform to the expected schema.

    Carries a human-readable ``location`` describing where parsing failed.
    """

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class NoGeodesicCapability(GeometryError):
    """The space does not provide geodesics (for this pair of points)."""


class NotUniquelyGeodesic(GeometryError):
    """The space is not flagged uniquely timelike geodesic on the sampled region."""


class OutOfDomain(GeometryError):
    """A curve parameter lies outside the representative's domain."""


class NoSamplerCapability(GeometryError):
    """The space does not provide a seeded sampler."""


class EmptyDomain(GeometryError):
    """No admissible parameter pairs were found for an angle estimate."""


class EmptyGrid(GeometryError):
    """A monotonicity grid contains no causally related parameter pairs."""


class MixedOrientation(GeometryError):
    """Curves of differing time orientation were passed where one orientation is required."""


class NoProlongation(GeometryError):
    """A geodesic cannot be prolonged past the requested point."""


class AngleNotConverged(GeometryError):
    """An angle estimate did not converge within the configured shells."""
