class ClosedRangeError(Exception):
    """Base exception."""


class ConfigError(ClosedRangeError):
    """A parameter is outside its admissible range."""


class SymbolValidationError(ConfigError):
    """A symbol tree is malformed; `path` names the offending node."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message


class NumericalFailureError(ClosedRangeError):
    """A computation produced non-finite values."""


class ResourceLimitError(NumericalFailureError):
    """A grid or net would exceed its configured size cap."""


class DegenerateSampleError(ClosedRangeError):
    """The derivative vanishes at the sample center."""
