"""This module contains the exceptions raised by the alexandrov_flow package."""

from typing import Any


class AlexandrovFlowError(Exception):
    """Base class for every error raised by the package."""


class DomainError(AlexandrovFlowError, ValueError):
    """Raised when arguments fall outside the domain of a model-space formula,
    e.g. a side longer than the diameter of a positively curved model plane."""


class DegenerateError(AlexandrovFlowError, ValueError):
    """Raised when a configuration is degenerate: a zero side adjacent to a comparison
    angle, or a direction requested from a point to itself."""


class SpaceMismatchError(AlexandrovFlowError, ValueError):
    """Raised when a point is used with a space it does not belong to."""


class RegionError(AlexandrovFlowError, ValueError):
    """Raised when a sampling region is invalid for the requested check."""


class MarginError(AlexandrovFlowError, ValueError):
    """Raised when an energy density is requested too close to the boundary of the disk."""


class InadmissibleMeasureError(AlexandrovFlowError, ValueError):
    """Raised when a scale measure does not satisfy the integrability condition of the
    averaged energy."""


class ConfigError(AlexandrovFlowError, ValueError):
    """Raised when an experiment configuration can't be parsed or validated.

    Args:
        diagnostics (list[str]): Human readable list of problems found in the configuration.
    """

    def __init__(self, diagnostics: list[str]):
        self._diagnostics = diagnostics
        super().__init__("; ".join(diagnostics))

    @property
    def diagnostics(self) -> list[str]:
        """Returns the problems found in the configuration.

        Returns:
            list[str]: List of diagnostics."""
        return self._diagnostics.copy()


class GeodesicDomainError(AlexandrovFlowError):
    """Raised when a geodesic can't be continued to the requested length.

    Args:
        message (str): Description of the failure.
        max_t (float): The largest parameter for which the geodesic is still valid.
    """

    def __init__(self, message: str, max_t: float):
        self._max_t = max_t
        super().__init__(f"{message} (max valid t = {max_t!r})")

    @property
    def max_t(self) -> float:
        """Returns the largest valid geodesic parameter.

        Returns:
            float: Maximal valid t."""
        return self._max_t


class NonUniqueGeodesicError(AlexandrovFlowError):
    """Raised when two points are joined by more than one shortest path."""


class GradientCheckError(AlexandrovFlowError):
    """Raised when the computed gradient violates the defining inequality
    df(v) <= <v, g> on the scanned directions."""


class CertificateError(AlexandrovFlowError):
    """Raised by strict certificate builders when a sampled inequality fails.

    Args:
        message (str): Description of the failure.
        witness (dict[str, Any]): The violating configuration.
    """

    def __init__(self, message: str, witness: dict[str, Any]):
        self._witness = witness
        super().__init__(message)

    @property
    def witness(self) -> dict[str, Any]:
        """Returns the violating configuration.

        Returns:
            dict[str, Any]: The witness of the failure."""
        return dict(self._witness)


class LoopEscapesBallError(AlexandrovFlowError, ValueError):
    """Raised when a loop handed to the filling construction leaves the certified ball."""
