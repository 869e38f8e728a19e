"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class LayerSqueezeError(Exception):
    """Base class for all library errors."""


class DomainError(LayerSqueezeError, ValueError):
    """Input outside the mathematical domain of an operation."""


class ExcludedValueError(DomainError):
    """Input hits a value explicitly excluded from the domain (e.g. gamma = +-2)."""


class BracketError(LayerSqueezeError, ValueError):
    """Root-finder bracket does not enclose a sign change."""


class ConvergenceError(LayerSqueezeError, RuntimeError):
    """Iterative procedure exhausted its iteration budget."""


class PoleError(LayerSqueezeError, ArithmeticError):
    """Evaluation hit a pole of a cotangent-type factor."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class StepSizeError(DomainError):
    """ODE step too coarse for the layer geometry."""


class RegionError(LayerSqueezeError, ValueError):
    """No limit point interaction is defined for the parameter region."""


class NoBoundStateError(DomainError):
    """Coupling does not support a bound state."""
