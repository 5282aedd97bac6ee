"""Exception hierarchy shared across the package."""


class SceneSemError(Exception):
    """Base class for all package-specific errors."""


# -- geometry ---------------------------------------------------------------

class SelfIntersectingError(SceneSemError):
    """Polygon or polyline boundary crosses itself."""


class DegenerateAreaError(SceneSemError):
    """Polygon area below the degeneracy threshold."""


class ZeroVectorError(SceneSemError):
    """A direction was requested from a zero-length vector."""


class DimensionMismatchError(SceneSemError):
    """Operands live in different spatial dimensions."""


# -- calculi ----------------------------------------------------------------

class UnsupportedEntityKindError(SceneSemError):
    """Entity kind not handled by the requested relation family."""


class DegenerateLineError(SceneSemError):
    """Directed line defined by two coincident points."""


class CoincidentPositionsError(SceneSemError):
    """Bearing between two oriented points is undefined (same position)."""


# -- space-time histories ---------------------------------------------------

class OutOfRangeError(SceneSemError):
    """Query time outside a history's sampled span."""


class BadIntervalError(SceneSemError):
    """Interval endpoints are not strictly ordered."""


class NoSignificantMotionError(SceneSemError):
    """Displacement too small to define a movement direction."""


class OrientationUndefinedError(SceneSemError):
    """Entity kind carries no orientation axis."""


class InterpolationError(SceneSemError):
    """Samples cannot be interpolated (e.g. vertex counts differ)."""


# -- fluents / interactions ---------------------------------------------------

class UnknownFluentNameError(SceneSemError):
    """Fluent name not present in the pattern table."""


class ArityMismatchError(SceneSemError):
    """Fluent argument count does not match its pattern definition."""


class UnknownInteractionError(SceneSemError):
    """Interaction name not present in the definition set."""


# -- floorplan ----------------------------------------------------------------

class TooFewPointsError(SceneSemError):
    """Point cloud too small for the requested neighborhood size."""


class NoRoomsFoundError(SceneSemError):
    """Room extraction produced no acceptable structures (diagnostic)."""


# -- navigation ---------------------------------------------------------------

class TrackOutsideStructureError(SceneSemError):
    """Trajectory never enters the queried floor-plan structure."""


class UnknownStructureError(SceneSemError):
    """Referenced floor-plan structure id does not exist."""


# -- configuration / io -------------------------------------------------------

class ConfigError(SceneSemError):
    """Invalid or unknown configuration content."""


class SceneFormatError(SceneSemError):
    """Malformed scene, plan, or path input file."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
