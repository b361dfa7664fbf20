"""Exception types raised across the package."""


class CubepadError(Exception):
    """Base class for all package errors."""


class InsideFaceError(CubepadError, ValueError):
    pass


class BadExtensionError(CubepadError, ValueError):
    pass


class DimensionMismatchError(CubepadError, ValueError):
    pass


class GeometryMismatchError(CubepadError, ValueError):
    pass


class InvalidRotationError(CubepadError, ValueError):
    pass


class InsufficientPointsError(CubepadError, ValueError):
    pass


class NoOverlapError(CubepadError, ValueError):
    pass


class TruncatedFileError(CubepadError, IOError):
    pass


class OutOfRangeSampleError(CubepadError, ValueError):
    pass


class BadIndexError(CubepadError, IndexError):
    pass


class ConfigError(CubepadError, ValueError):
    pass


class SourceValidityError(CubepadError, RuntimeError):
    """An extension sample would read outside its source face (internal bug)."""


class IoFailureError(CubepadError, OSError):
    pass
