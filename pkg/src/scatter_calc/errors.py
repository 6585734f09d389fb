"""Common base class for all library errors."""


class ScatterCalcError(Exception):
    """Base class for every error raised by scatter-calc."""
