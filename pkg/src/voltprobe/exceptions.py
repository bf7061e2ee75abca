"""Custom exception hierarchy for VoltProbe.

All exceptions inherit from VoltProbeError for easy catching at the top level.
Follows fail-fast principles - errors propagate immediately without fallbacks,
except for the documented precision escalations which are logged.
"""


class VoltProbeError(Exception):
    """Base exception for all VoltProbe errors."""


class ConfigurationError(VoltProbeError):
    """Configuration-related errors."""


class ParameterError(VoltProbeError, ValueError):
    """An argument lies outside the domain of an operation."""


class PrecisionError(VoltProbeError):
    """Predicted cancellation exceeds the double-precision budget."""


class QuadratureError(VoltProbeError):
    """Adaptive quadrature could not meet its tolerance within the panel budget."""


class ConvergenceError(VoltProbeError):
    """An eigenvalue or root iteration failed to converge."""


class CertificationError(VoltProbeError):
    """A root set could not be certified real."""


class DiscretizationError(VoltProbeError):
    """Grid or collocation matrix construction was rejected."""
