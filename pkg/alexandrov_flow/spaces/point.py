"""This module contains the value types living on a space: points in geodesic polar
coordinates around the apex, and tangent vectors given by a direction and a magnitude."""

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class SpacePoint:
    """A point in geodesic polar coordinates (r, phi) around the apex (origin) of a space.
    Points are normally built by `Space.point`, which reduces phi modulo the cone angle
    and identifies every point with r = 0 (and r = π/√κ when κ > 0) with the pole.

    Args:
        r (float): Distance from the apex.
        phi (float): Angle on the circle of length θ_total.

    Example:
        ```python
        from alexandrov_flow.spaces import Space

        cone = Space.euclidean_cone(3 * math.pi / 2)
        x = cone.point(1.0, 0.25)
        ```
    """

    r: float
    phi: float

    def to_dict(self) -> dict[str, Any]:
        """Returns a JSON friendly representation.

        Returns:
            dict[str, Any]: {"r", "phi"}."""
        return {"r": self.r, "phi": self.phi}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SpacePoint":
        """Creates a point from its JSON representation (not normalized).

        Args:
            data (dict[str, Any]): {"r", "phi"}.

        Returns:
            SpacePoint: The point."""
        return cls(float(data["r"]), float(data.get("phi", 0.0)))


@dataclass(frozen=True)
class TangentVector:
    """A tangent vector at `base`: a direction on the circle of directions at base and a
    nonnegative magnitude. Away from the poles direction 0 points away from the apex,
    π points toward it and π/2 points toward increasing phi. At a pole the direction is
    the phi of the ray leaving the pole.

    Args:
        base (SpacePoint): Foot point.
        direction (float): Angle on the circle of directions at base.
        mag (float): Magnitude, nonnegative.
    """

    base: SpacePoint
    direction: float
    mag: float

    def __post_init__(self) -> None:
        if self.mag < 0:
            raise ValueError(f"Tangent vector magnitude must be nonnegative, got {self.mag!r}")

    @property
    def is_zero(self) -> bool:
        """Returns True for the zero vector.

        Returns:
            bool: True if mag == 0."""
        return self.mag == 0.0

    def scaled(self, factor: float) -> "TangentVector":
        """Returns the vector with magnitude multiplied by a nonnegative factor.

        Args:
            factor (float): Nonnegative factor.

        Returns:
            TangentVector: Scaled vector."""
        return TangentVector(self.base, self.direction, self.mag * factor)

    def to_dict(self) -> dict[str, Any]:
        """Returns a JSON friendly representation.

        Returns:
            dict[str, Any]: {"base", "direction", "mag"}."""
        return {"base": self.base.to_dict(), "direction": self.direction, "mag": self.mag}
