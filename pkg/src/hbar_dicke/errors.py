"""Exception hierarchy. The CLI maps these onto exit codes."""


class HbarDickeError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(HbarDickeError, ValueError):
    """Input violates a documented invariant."""


class DimensionError(ValidationError):
    """Operator or state shape does not match the Hilbert layout."""


class ConfigParseError(HbarDickeError):
    """Device file could not be parsed; message carries ``path:line:col``."""


class NumericalError(HbarDickeError, ArithmeticError):
    """A numerical procedure could not produce a trustworthy answer."""


class LeakageError(NumericalError):
    """Population outside the two lowest qubit levels exceeds the threshold."""

    def __init__(self, leaked):
        self.leaked = float(leaked)
        super().__init__(f"qubit leakage {self.leaked:.3e} exceeds threshold")


class SingularMatrixError(NumericalError):
    pass


class InconclusiveExtractionError(NumericalError):
    """Gap minimum sits on the sweep boundary, so no coupling can be read off."""
