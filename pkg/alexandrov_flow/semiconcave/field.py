"""This module contains the distance-type scalar fields whose gradient flows are studied:
distance from a finite set, distance from a metric sphere, affine wrappers and
combinations of them."""

import logging
from typing import Any

import numpy as np

from alexandrov_flow.model_trig import distance_concavity_modulus
from alexandrov_flow.spaces import Space, SpacePoint
from alexandrov_flow.utils.errors import ConfigError, GeodesicDomainError

logger = logging.getLogger(__name__)

DEFAULT_NET_SIZE = 256


class ScalarField:
    """Base class for the scalar fields. Child classes implement `evaluate_many`,
    `set_distance` and `modulus`.

    Args:
        space (Space): The space the field lives on.

    Public Methods:
        evaluate(x) -> float: Value at a point.
        evaluate_many(rs, phis) -> np.ndarray: Values at many points.
        set_distance(x) -> float: Distance from x to the set defining the field.
        modulus(x, kappa) -> float: Concavity modulus λ(x) for the lower curvature bound κ.
    """

    _kind: str = "field"

    def __init__(self, space: Space):
        self._space = space

    @property
    def space(self) -> Space:
        """Returns the space of the field.

        Returns:
            Space: The space."""
        return self._space

    @property
    def kind(self) -> str:
        """Returns the kind of the field.

        Returns:
            str: Kind used in JSON descriptors."""
        return self._kind

    @property
    def lipschitz(self) -> float:
        """Returns a Lipschitz constant of the field.

        Returns:
            float: 1 for distance-type fields."""
        return 1.0

    @property
    def center(self) -> SpacePoint | None:
        """Returns the point the gradient flow contracts to, if there is one.

        Returns:
            SpacePoint | None: The center or None."""
        return None

    def evaluate(self, x: SpacePoint) -> float:
        """Returns f(x).

        Args:
            x (SpacePoint): Point of the space.

        Returns:
            float: Value of the field."""
        return float(self.evaluate_many(np.array([x.r]), np.array([x.phi]))[0])

    def evaluate_many(self, rs: np.ndarray, phis: np.ndarray) -> np.ndarray:
        """Returns the values at the points with the given coordinates.

        Args:
            rs (np.ndarray): Radii.
            phis (np.ndarray): Angles.

        Returns:
            np.ndarray: Values."""
        raise NotImplementedError

    def set_distance(self, x: SpacePoint) -> float:
        """Returns the distance from x to the set whose distance function defines the field.

        Args:
            x (SpacePoint): Point.

        Returns:
            float: d_A(x)."""
        raise NotImplementedError

    def modulus(self, x: SpacePoint, kappa: float) -> float:
        """Returns the concavity modulus λ(x) = cs_κ(d_A(x))/sn_κ(d_A(x)).

        Args:
            x (SpacePoint): Point off the set A.
            kappa (float): Lower curvature bound.

        Returns:
            float: λ(x)."""
        return float(distance_concavity_modulus(kappa, self.set_distance(x)))

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON descriptor of the field.

        Returns:
            dict[str, Any]: Descriptor."""
        raise NotImplementedError

    def __neg__(self) -> "AffineField":
        return AffineField(self, -1.0, 0.0)


class DistanceFromSet(ScalarField):
    """The distance d_A from a finite nonempty set A.

    Args:
        space (Space): The space.
        points (list[SpacePoint]): The set A.

    Example:
        ```python
        from alexandrov_flow.semiconcave import DistanceFromSet

        d_apex = DistanceFromSet(cone, [cone.apex])
        ```
    """

    _kind = "dist_from_set"

    def __init__(self, space: Space, points: list[SpacePoint]):
        super().__init__(space)
        if not points:
            raise ValueError("The set of a distance field can't be empty")
        for point in points:
            if not space.contains(point):
                raise ValueError(f"{point} is not a point of {space!r}")
        self._points = list(points)

    @property
    def points(self) -> list[SpacePoint]:
        """Returns the set A.

        Returns:
            list[SpacePoint]: The points of A."""
        return self._points.copy()

    def evaluate_many(self, rs: np.ndarray, phis: np.ndarray) -> np.ndarray:
        values = np.full(np.shape(rs), np.inf)
        for point in self._points:
            values = np.minimum(values, self._space.distances(point, rs, phis))
        return values

    def set_distance(self, x: SpacePoint) -> float:
        return self.evaluate(x)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self._kind, "points": [point.to_dict() for point in self._points]}


class DistanceFromSphere(ScalarField):
    """The distance from the metric sphere S(p, R).

    When p is a pole and no net size is given, the sphere is a full metric circle and the
    field is evaluated exactly as |R - |p,x||. Otherwise S(p, R) is replaced by the net of
    the points exp_p(R·ξ) over `net_size` equispaced directions ξ, skipping directions
    whose geodesic is not minimizing up to R.

    Args:
        space (Space): The space.
        center (SpacePoint): The center p.
        radius (float): The radius R, positive.
        signed_inside (bool, optional): If True the field is positive inside the ball and
            negative outside, e.g. R - |p,x| in the exact case. Defaults to False.
        net_size (int, optional): Size of the net approximating the sphere. Defaults to None.

    Example:
        ```python
        from alexandrov_flow.semiconcave import DistanceFromSphere

        f = DistanceFromSphere(cone, cone.apex, 1.0)
        f.evaluate(cone.point(0.25, 1.0))  # 0.75
        ```
    """

    _kind = "dist_from_sphere"

    # pylint: disable=R0913
    def __init__(
        self,
        space: Space,
        center: SpacePoint,
        radius: float,
        signed_inside: bool = False,
        net_size: int | None = None,
    ):
        super().__init__(space)
        if radius <= 0:
            raise ValueError(f"Sphere radius {radius!r} must be positive")
        if not space.contains(center):
            raise ValueError(f"{center} is not a point of {space!r}")
        self._center = center
        self._radius = float(radius)
        self._signed_inside = signed_inside
        self._net_size = net_size
        self._exact = net_size is None and space.is_pole(center)
        self._net: list[SpacePoint] = [] if self._exact else self._build_net(net_size or DEFAULT_NET_SIZE)

    def _build_net(self, size: int) -> list[SpacePoint]:
        circle = self._space.directions_circle_length(self._center)
        net = []
        for index in range(size):
            try:
                net.append(self._space.exp(self._center, index * circle / size, self._radius))
            except GeodesicDomainError:
                logger.debug("Net direction %d of %d skipped", index, size)
        if not net:
            raise ValueError(f"No point of S({self._center}, {self._radius!r}) is reachable")
        logger.debug("Sphere net built with %d of %d points", len(net), size)
        return net

    @property
    def center(self) -> SpacePoint:
        return self._center

    @property
    def radius(self) -> float:
        """Returns the radius R.

        Returns:
            float: R."""
        return self._radius

    @property
    def signed_inside(self) -> bool:
        """Returns True if the field is signed (positive inside the ball).

        Returns:
            bool: Signed flag."""
        return self._signed_inside

    @property
    def exact(self) -> bool:
        """Returns True if the field is evaluated without a net.

        Returns:
            bool: Exact flag."""
        return self._exact

    @property
    def net(self) -> list[SpacePoint]:
        """Returns the net approximating the sphere (empty in the exact case).

        Returns:
            list[SpacePoint]: Net points."""
        return self._net.copy()

    def _unsigned(self, rs: np.ndarray, phis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        to_center = self._space.distances(self._center, rs, phis)
        if self._exact:
            return np.abs(self._radius - to_center), to_center
        values = np.full(np.shape(rs), np.inf)
        for point in self._net:
            values = np.minimum(values, self._space.distances(point, rs, phis))
        return values, to_center

    def evaluate_many(self, rs: np.ndarray, phis: np.ndarray) -> np.ndarray:
        values, to_center = self._unsigned(rs, phis)
        if self._signed_inside:
            return np.where(to_center <= self._radius, values, -values)
        return values

    def set_distance(self, x: SpacePoint) -> float:
        values, _ = self._unsigned(np.array([x.r]), np.array([x.phi]))
        return float(values[0])

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self._kind,
            "center": self._center.to_dict(),
            "radius": self._radius,
            "signed_inside": self._signed_inside,
            "net_size": self._net_size,
        }


class AffineField(ScalarField):
    """The field scale·g + shift. Its concavity modulus is scale·λ_g, so the negation
    -g is tested against -λ_g.

    Args:
        base (ScalarField): The wrapped field g.
        scale (float): Multiplier.
        shift (float, optional): Additive constant. Defaults to 0.
    """

    _kind = "affine"

    def __init__(self, base: ScalarField, scale: float, shift: float = 0.0):
        super().__init__(base.space)
        self._base = base
        self._scale = float(scale)
        self._shift = float(shift)

    @property
    def base(self) -> ScalarField:
        """Returns the wrapped field.

        Returns:
            ScalarField: g."""
        return self._base

    @property
    def scale(self) -> float:
        """Returns the multiplier.

        Returns:
            float: scale."""
        return self._scale

    @property
    def lipschitz(self) -> float:
        return abs(self._scale) * self._base.lipschitz

    @property
    def center(self) -> SpacePoint | None:
        return self._base.center if self._scale > 0 else None

    def evaluate_many(self, rs: np.ndarray, phis: np.ndarray) -> np.ndarray:
        return self._scale * self._base.evaluate_many(rs, phis) + self._shift

    def set_distance(self, x: SpacePoint) -> float:
        return self._base.set_distance(x)

    def modulus(self, x: SpacePoint, kappa: float) -> float:
        return self._scale * self._base.modulus(x, kappa)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self._kind, "base": self._base.to_dict(), "scale": self._scale, "shift": self._shift}


class CombinedField(ScalarField):
    """A weighted sum of fields on the same space, e.g. -(d_a + d_b)/2, whose gradient
    curves are not geodesics.

    Args:
        fields (list[ScalarField]): Summands.
        weights (list[float]): Weights, one per summand.
    """

    _kind = "combined"

    def __init__(self, fields: list[ScalarField], weights: list[float]):
        if not fields or len(fields) != len(weights):
            raise ValueError("A combined field needs one weight per summand")
        space = fields[0].space
        if any(field.space != space for field in fields):
            raise ValueError("All summands of a combined field must live on the same space")
        super().__init__(space)
        self._fields = list(fields)
        self._weights = [float(weight) for weight in weights]

    @property
    def lipschitz(self) -> float:
        return sum(abs(weight) * field.lipschitz for field, weight in zip(self._fields, self._weights))

    def evaluate_many(self, rs: np.ndarray, phis: np.ndarray) -> np.ndarray:
        total = np.zeros(np.shape(rs))
        for field, weight in zip(self._fields, self._weights):
            total = total + weight * field.evaluate_many(rs, phis)
        return total

    def set_distance(self, x: SpacePoint) -> float:
        return min(field.set_distance(x) for field in self._fields)

    def modulus(self, x: SpacePoint, kappa: float) -> float:
        return sum(weight * field.modulus(x, kappa) for field, weight in zip(self._fields, self._weights))

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self._kind,
            "fields": [field.to_dict() for field in self._fields],
            "weights": list(self._weights),
        }


def field_from_dict(space: Space, data: dict[str, Any]) -> ScalarField:
    """Creates a field from its JSON descriptor.

    Args:
        space (Space): The space of the field.
        data (dict[str, Any]): Descriptor as produced by `to_dict`.

    Raises:
        ConfigError: If the descriptor is malformed.

    Returns:
        ScalarField: The field."""

    def point(raw: dict[str, Any]) -> SpacePoint:
        return space.point(float(raw["r"]), float(raw.get("phi", 0.0)))

    try:
        kind = data["kind"]
        if kind == "dist_from_set":
            return DistanceFromSet(space, [point(raw) for raw in data["points"]])
        if kind == "dist_from_sphere":
            return DistanceFromSphere(
                space,
                point(data.get("center", {"r": 0.0})),
                float(data["radius"]),
                bool(data.get("signed_inside", False)),
                data.get("net_size"),
            )
        if kind == "affine":
            return AffineField(
                field_from_dict(space, data["base"]), float(data["scale"]), float(data.get("shift", 0.0))
            )
        if kind == "combined":
            return CombinedField([field_from_dict(space, raw) for raw in data["fields"]], list(data["weights"]))
    except (KeyError, TypeError, ValueError) as error:
        if isinstance(error, ConfigError):
            raise
        raise ConfigError([f"field: invalid descriptor {data!r} ({error})"]) from error
    raise ConfigError([f"field.kind: unknown kind {data.get('kind')!r}"])


def negated(field: ScalarField) -> AffineField:
    """Returns -field.

    Args:
        field (ScalarField): Field to negate.

    Returns:
        AffineField: The negated field."""
    return AffineField(field, -1.0, 0.0)

