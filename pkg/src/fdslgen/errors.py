"""Exception types raised by the generators and the pipeline."""


class FdslgenError(Exception):
    """Base class for all toolkit errors."""


class EmptyRequestError(FdslgenError):
    """A generator was asked for zero elements where at least one is required."""


class InvalidParameterError(FdslgenError):
    """A parameter is outside its documented domain."""


class InvalidGeometryError(FdslgenError):
    """Geometry input contains non-finite coordinates."""


class DegenerateCloudError(FdslgenError):
    """A point cloud has a zero-extent bounding box and cannot be framed."""


class DegenerateImageError(FdslgenError):
    """A rendered image ended up with no foreground pixels."""


class DivergentSystemError(FdslgenError):
    """Chaos-game iterates became non-finite (bad system acceptance)."""


class ClassGenerationError(FdslgenError):
    """Repeated rejection sampling failed to produce an acceptable system."""


class ManifestError(FdslgenError):
    """Dataset manifest is missing or malformed."""


class BuildError(FdslgenError):
    """Dataset build aborted (I/O failure, partial output marked)."""
