"""Exception hierarchy shared by the analysis modules."""


class GripperError(Exception):
    """Base class for all analysis errors."""


class DomainError(GripperError, ValueError):
    """An input lies outside the domain where a formula is defined."""


class UnsupportedProblemError(GripperError):
    """A geometric program outside what the solver handles."""


class InfeasibleError(GripperError):
    """No strictly positive dual point satisfies the conditions."""


class NumericalError(GripperError):
    """A numerical step failed in a way the inputs should have prevented."""


class ConfigError(GripperError):
    """Malformed or incomplete design configuration."""

    def __init__(self, message, path=None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class StageError(GripperError):
    """Failure inside one stage of the design pipeline."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {cause}")
