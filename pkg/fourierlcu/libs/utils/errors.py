class FourierLcuError(Exception):
    """Base exception for fourierlcu errors."""

    def __init__(self, message, type=None):
        super().__init__(message)
        self.type = type
        self.name = self.__class__.__name__


class DimensionError(FourierLcuError):
    """Qubit count above a simulator cap or mismatched operand shapes."""


class GateError(FourierLcuError):
    """Invalid gate targets or angles."""


class UnboundParameterError(FourierLcuError):
    """A circuit was executed with a named parameter left unbound."""


class DecompositionError(FourierLcuError):
    """Invalid input to an LCU construction."""


class ProblemError(FourierLcuError):
    """Infeasible problem or graph parameters."""


class OptimizationError(FourierLcuError):
    """Invalid optimizer bounds, grid or budget."""


class ConfigError(FourierLcuError):
    """Configuration file or override could not be applied."""


class SamplingError(FourierLcuError):
    """Empty or negatively weighted samples, non-positive shot counts or risk levels."""
