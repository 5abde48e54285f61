"""This module contains the Space class: the κ-cone over a circle of length θ_total.
The model plane M_κ is the κ-cone with θ_total = 2π, the Euclidean cone is the 0-cone and
the spherical cone is the 1-cone, so one set of formulas from model_trig serves every
built-in space. Points use geodesic polar coordinates around the apex."""

import logging
import math
from typing import Any

import numpy as np
from scipy import integrate, optimize

from alexandrov_flow.model_trig import angle_from_sides, cs, diameter, half_square, model_side, sn
from alexandrov_flow.spaces.point import SpacePoint, TangentVector
from alexandrov_flow.utils.errors import (
    ConfigError,
    DegenerateError,
    DomainError,
    GeodesicDomainError,
    NonUniqueGeodesicError,
    RegionError,
    SpaceMismatchError,
)
from alexandrov_flow.utils.utils import TWO_PI, circle_gap, signed_angle, wrap_angle

logger = logging.getLogger(__name__)

POLE_SNAP = 1e-14
RADIAL_SNAP = 1e-9
TIE_TOLERANCE = 1e-12
KINDS = ("model_plane", "euclidean_cone", "spherical_cone")


class Space:
    """A two-dimensional κ-cone over a circle of length θ_total.

    Args:
        kind (str): One of "model_plane", "euclidean_cone", "spherical_cone".
        kappa (float): Curvature of the smooth part.
        theta_total (float): Cone angle at the apex, positive.
        curvature_lower_bound (float, optional): Declared lower curvature bound, which is
            only checked by the curvature tests. Defaults to kappa.

    Raises:
        ValueError: On an unknown kind or a non-positive cone angle.

    Examples:
        ```python
        from alexandrov_flow.spaces import Space

        cone = Space.euclidean_cone(3 * math.pi / 2)
        x = cone.point(1.0, 0.0)
        y = cone.point(1.0, math.pi / 2)
        cone.distance(x, y)  # √2
        ```
    """

    def __init__(
        self,
        kind: str,
        kappa: float,
        theta_total: float,
        curvature_lower_bound: float | None = None,
    ):
        if kind not in KINDS:
            raise ValueError(f"Unknown space kind {kind!r}, expected one of {KINDS}")
        if not (math.isfinite(theta_total) and theta_total > 0):
            raise ValueError(f"Cone angle must be positive, got {theta_total!r}")
        if not math.isfinite(kappa):
            raise ValueError(f"Curvature must be finite, got {kappa!r}")
        self._kind = kind
        self._kappa = float(kappa)
        self._theta_total = float(theta_total)
        self._curvature_lower_bound = float(kappa if curvature_lower_bound is None else curvature_lower_bound)
        self._diameter = diameter(self._kappa)
        self._regular = abs(self._theta_total - TWO_PI) <= TIE_TOLERANCE

    @classmethod
    def model_plane(cls, kappa: float) -> "Space":
        """Returns the model plane M_κ (sphere, plane or hyperbolic plane).

        Args:
            kappa (float): Curvature.

        Returns:
            Space: M_κ."""
        return cls("model_plane", kappa, TWO_PI)

    @classmethod
    def euclidean_cone(cls, theta_total: float) -> "Space":
        """Returns the flat cone over a circle of length θ_total.

        Args:
            theta_total (float): Cone angle.

        Returns:
            Space: The Euclidean cone."""
        return cls("euclidean_cone", 0.0, theta_total)

    @classmethod
    def spherical_cone(cls, theta_total: float) -> "Space":
        """Returns the spherical suspension of a circle of length θ_total: a curvature 1
        surface with two conical poles at distance π.

        Args:
            theta_total (float): Cone angle at both poles.

        Returns:
            Space: The spherical cone."""
        return cls("spherical_cone", 1.0, theta_total)

    @property
    def kind(self) -> str:
        """Returns the kind of the space.

        Returns:
            str: "model_plane", "euclidean_cone" or "spherical_cone"."""
        return self._kind

    @property
    def kappa(self) -> float:
        """Returns the curvature of the smooth part.

        Returns:
            float: κ."""
        return self._kappa

    @property
    def theta_total(self) -> float:
        """Returns the cone angle at the poles.

        Returns:
            float: θ_total."""
        return self._theta_total

    @property
    def curvature_lower_bound(self) -> float:
        """Returns the declared lower curvature bound.

        Returns:
            float: Declared bound."""
        return self._curvature_lower_bound

    @property
    def pole_distance(self) -> float:
        """Returns the distance between the two poles, infinite when κ <= 0.

        Returns:
            float: π/√κ or ∞."""
        return self._diameter

    @property
    def regular(self) -> bool:
        """Returns True if the cone angle is 2π, i.e. the space has no singular points.

        Returns:
            bool: True for model planes."""
        return self._regular

    @property
    def apex(self) -> SpacePoint:
        """Returns the apex (the origin of a model plane).

        Returns:
            SpacePoint: The point with r = 0."""
        return SpacePoint(0.0, 0.0)

    @property
    def far_pole(self) -> SpacePoint | None:
        """Returns the pole opposite to the apex when κ > 0.

        Returns:
            SpacePoint | None: The point with r = π/√κ, None if κ <= 0."""
        return SpacePoint(self._diameter, 0.0) if self._kappa > 0 else None

    def poles(self) -> list[SpacePoint]:
        """Returns the poles of the polar coordinates (the singular points of a cone).

        Returns:
            list[SpacePoint]: Apex and, for κ > 0, the far pole."""
        far = self.far_pole
        return [self.apex] if far is None else [self.apex, far]

    def _key(self) -> tuple[str, float, float, float]:
        return (self._kind, self._kappa, self._theta_total, self._curvature_lower_bound)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Space) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self._kind == "model_plane":
            return f"Space.model_plane({self._kappa!r})"
        return f"Space.{self._kind}({self._theta_total!r})"

    # region points
    def point(self, r: float, phi: float = 0.0) -> SpacePoint:
        """Returns the canonical point with the given polar coordinates.

        Args:
            r (float): Distance from the apex.
            phi (float, optional): Angle, reduced modulo θ_total. Defaults to 0.

        Raises:
            DomainError: If r is negative or larger than π/√κ.

        Returns:
            SpacePoint: The point."""
        r = float(r)
        phi = float(phi)
        if not (math.isfinite(r) and math.isfinite(phi)):
            raise DomainError(f"Coordinates must be finite, got ({r!r}, {phi!r})")
        if r < 0:
            if r < -POLE_SNAP:
                raise DomainError(f"Radius {r!r} is negative")
            r = 0.0
        if self._kappa > 0:
            if r > self._diameter * (1.0 + 1e-12):
                raise DomainError(f"Radius {r!r} exceeds the pole distance {self._diameter!r}")
            if self._diameter - r <= POLE_SNAP * max(1.0, self._diameter):
                r = self._diameter
        if r <= POLE_SNAP:
            r = 0.0
        if r == 0.0 or r == self._diameter:
            return SpacePoint(r, 0.0)
        return SpacePoint(r, wrap_angle(phi, self._theta_total))

    def contains(self, x: Any) -> bool:
        """Checks whether x is a valid point of the space.

        Args:
            x (Any): Candidate point.

        Returns:
            bool: True if x is a SpacePoint within the coordinate ranges."""
        if not isinstance(x, SpacePoint):
            return False
        if not (math.isfinite(x.r) and math.isfinite(x.phi)):
            return False
        return 0.0 <= x.r <= self._diameter and 0.0 <= x.phi < self._theta_total

    def _require(self, *points: SpacePoint) -> None:
        for x in points:
            if not self.contains(x):
                raise SpaceMismatchError(f"{x!r} is not a point of {self!r}")

    def is_pole(self, x: SpacePoint) -> bool:
        """Returns True at the apex and at the far pole.

        Args:
            x (SpacePoint): Point.

        Returns:
            bool: True if x is a pole."""
        return x.r == 0.0 or (self._kappa > 0 and x.r == self._diameter)

    def is_singular(self, x: SpacePoint) -> bool:
        """Returns True at poles with a cone angle different from 2π.

        Args:
            x (SpacePoint): Point.

        Returns:
            bool: True at singular points."""
        return not self._regular and self.is_pole(x)

    def directions_circle_length(self, x: SpacePoint) -> float:
        """Returns the length of the circle of directions Σ_x.

        Args:
            x (SpacePoint): Point.

        Returns:
            float: θ_total at the poles, 2π elsewhere."""
        self._require(x)
        return self._theta_total if self.is_pole(x) else TWO_PI

    def injectivity_scale(self, x: SpacePoint) -> float:
        """Returns a length below which geodesics from x see no singular point.
        Used to scale finite-difference steps.

        Args:
            x (SpacePoint): Point.

        Returns:
            float: Scale in (0, 1]."""
        cap = min(1.0, self._diameter / 4.0)
        if self._regular or self.is_pole(x):
            return cap
        near = x.r if self._kappa <= 0 else min(x.r, self._diameter - x.r)
        return min(cap, near)

    # endregion

    # region distances
    def distances(self, x: SpacePoint, rs: Any, phis: Any) -> np.ndarray:
        """Returns distances from x to many points given by coordinate arrays.

        Args:
            x (SpacePoint): Source point.
            rs (np.ndarray): Radii of the targets.
            phis (np.ndarray): Angles of the targets.

        Returns:
            np.ndarray: Distances."""
        gaps = circle_gap(x.phi, np.asarray(phis, dtype=float), self._theta_total)
        rs = np.asarray(rs, dtype=float)
        return np.asarray(model_side(self._kappa, x.r, rs, np.minimum(gaps, math.pi)), dtype=float)

    def distance(self, x: SpacePoint, y: SpacePoint) -> float:
        """Returns |x, y|. With angular gap Δ the distance is the model side opposite to
        min(Δ, π); gaps of at least π route through a pole.

        Args:
            x (SpacePoint): First point.
            y (SpacePoint): Second point.

        Raises:
            SpaceMismatchError: If a point does not belong to the space.

        Returns:
            float: Distance."""
        self._require(x, y)
        if x == y:
            return 0.0
        gap = circle_gap(x.phi, y.phi, self._theta_total)
        return float(model_side(self._kappa, x.r, y.r, min(gap, math.pi)))

    # endregion

    # region geodesics
    def _sweep(self, r0: float, t: Any, beta: Any) -> Any:
        """Angle at the apex swept by a geodesic of length t leaving (r0, ·) at angle β
        from the inward radial direction."""
        return np.arctan2(
            np.asarray(sn(self._kappa, t)) * np.sin(beta),
            sn(self._kappa, r0) * np.asarray(cs(self._kappa, t))
            - cs(self._kappa, r0) * np.asarray(sn(self._kappa, t)) * np.cos(beta),
        )

    @staticmethod
    def _inward_angle(direction: Any) -> tuple[np.ndarray, np.ndarray]:
        signed = np.asarray(signed_angle(direction), dtype=float)
        beta = math.pi - np.abs(signed)
        beta = np.where(beta < RADIAL_SNAP, 0.0, beta)
        beta = np.where(beta > math.pi - RADIAL_SNAP, math.pi, beta)
        return signed, beta

    def exp_arrays(self, x: SpacePoint, directions: Any, lengths: Any) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Vectorized exponential map. Never raises on invalid lengths; reports them in
        the validity mask instead.

        Args:
            x (SpacePoint): Foot point.
            directions (np.ndarray): Directions on the circle of directions at x.
            lengths (np.ndarray): Nonnegative lengths.

        Returns:
            tuple[np.ndarray, np.ndarray, np.ndarray]: Radii, angles and a mask of the
                entries where the geodesic is minimizing up to the requested length."""
        directions, lengths = np.broadcast_arrays(
            np.asarray(directions, dtype=float), np.asarray(lengths, dtype=float)
        )
        if np.any(lengths < 0):
            raise ValueError("Geodesic lengths must be nonnegative")
        limit = self._diameter * (1.0 + 1e-12)
        valid = lengths <= limit
        t = np.minimum(lengths, self._diameter)
        if self.is_pole(x):
            phi = np.mod(directions, self._theta_total)
            radius = t if x.r == 0.0 else self._diameter - t
            return np.asarray(radius, dtype=float), phi, valid
        signed, beta = self._inward_angle(directions)
        radius = np.asarray(model_side(self._kappa, x.r, t, beta), dtype=float)
        sweep = np.asarray(self._sweep(x.r, t, beta), dtype=float)
        phi = np.mod(x.phi + np.sign(signed) * sweep, self._theta_total)
        if not self._regular:
            valid &= ~((beta == 0.0) & (lengths > x.r * (1.0 + 1e-12)))
            if self._kappa > 0:
                valid &= ~((beta == math.pi) & (lengths > (self._diameter - x.r) * (1.0 + 1e-12)))
            if self._theta_total < TWO_PI:
                valid &= sweep <= self._theta_total / 2.0 + TIE_TOLERANCE
        return radius, phi, valid

    def max_geodesic_length(self, x: SpacePoint, direction: float) -> float:
        """Returns the largest t for which the geodesic from x in the given direction
        is defined and minimizing.

        Args:
            x (SpacePoint): Foot point.
            direction (float): Direction at x.

        Returns:
            float: The bound, infinite if there is none."""
        bound = self._diameter
        if self.is_pole(x) or self._regular:
            return bound
        _, beta_array = self._inward_angle(direction)
        beta = float(beta_array)
        if beta == 0.0:
            return min(bound, x.r)
        if beta == math.pi:
            return min(bound, self._diameter - x.r) if self._kappa > 0 else bound
        if self._theta_total >= TWO_PI:
            return bound

        def excess(t: float) -> float:
            return float(self._sweep(x.r, t, beta)) - self._theta_total / 2.0

        upper = self._diameter if self._kappa > 0 else 1.0
        while self._kappa <= 0 and excess(upper) <= 0 and upper < 512.0:
            upper *= 2.0
        if excess(upper) <= 0:
            return bound
        return min(bound, float(optimize.brentq(excess, 0.0, upper, xtol=1e-14)))

    def exp(self, x: SpacePoint, direction: float, t: float) -> SpacePoint:
        """Returns exp_x(t·ξ), the point at distance t along the geodesic leaving x in
        direction ξ.

        Args:
            x (SpacePoint): Foot point.
            direction (float): Direction ξ at x.
            t (float): Length, nonnegative.

        Raises:
            GeodesicDomainError: If the geodesic hits a singular pole or stops being
                minimizing before t; the error reports the maximal valid t.

        Returns:
            SpacePoint: The endpoint."""
        self._require(x)
        if t < 0:
            raise ValueError(f"Geodesic length {t!r} must be nonnegative")
        if t == 0:
            return x
        radius, phi, valid = self.exp_arrays(x, direction, t)
        if not bool(valid):
            raise GeodesicDomainError(
                f"Geodesic from {x} in direction {direction!r} is not defined up to t={t!r}",
                self.max_geodesic_length(x, direction),
            )
        return self.point(float(radius), float(phi))

    def _signed_gap(self, x: SpacePoint, y: SpacePoint) -> float:
        raw = float(np.mod(y.phi - x.phi, self._theta_total))
        return raw if raw <= self._theta_total - raw else raw - self._theta_total

    def _pole_route(self, x: SpacePoint, y: SpacePoint) -> str | None:
        """Returns "apex" or "far" when the geodesic xy passes through a pole between
        two non-pole points, None for a direct geodesic."""
        if abs(self._signed_gap(x, y)) < math.pi:
            return None
        if self._kappa > 0:
            via_apex = x.r + y.r
            via_far = 2.0 * self._diameter - x.r - y.r
            if abs(via_far - via_apex) <= TIE_TOLERANCE * self._diameter:
                raise NonUniqueGeodesicError(f"{x} and {y} are joined through both poles")
            return "far" if via_far < via_apex else "apex"
        return "apex"

    def log_direction(self, x: SpacePoint, y: SpacePoint) -> TangentVector:
        """Returns log_x(y) = |xy|·↑_x^y.

        Args:
            x (SpacePoint): Foot point.
            y (SpacePoint): Target point.

        Raises:
            DegenerateError: If x == y.
            NonUniqueGeodesicError: If several shortest paths join x and y.

        Returns:
            TangentVector: Direction of the geodesic xy with magnitude |xy|."""
        d = self.distance(x, y)
        if d == 0.0:
            raise DegenerateError("Direction from a point to itself is undefined")
        if self._kappa > 0 and d >= self._diameter * (1.0 - TIE_TOLERANCE):
            raise NonUniqueGeodesicError(f"{x} and {y} are antipodal")
        if self.is_pole(x):
            return TangentVector(x, wrap_angle(y.phi, self._theta_total), d)
        if y.r == 0.0:
            return TangentVector(x, math.pi, d)
        if self.is_pole(y):
            return TangentVector(x, 0.0, d)
        signed = self._signed_gap(x, y)
        gap = abs(signed)
        route = self._pole_route(x, y)
        if route is not None:
            return TangentVector(x, math.pi if route == "apex" else 0.0, d)
        if abs(self._theta_total - 2.0 * gap) <= TIE_TOLERANCE:
            raise NonUniqueGeodesicError(f"{x} and {y} are joined around both sides of the apex")
        k = self._kappa
        beta = math.atan2(
            math.sin(gap) * sn(k, y.r),
            sn(k, x.r) * cs(k, y.r) - cs(k, x.r) * sn(k, y.r) * math.cos(gap),
        )
        direction = math.pi - beta if signed >= 0 else math.pi + beta
        return TangentVector(x, wrap_angle(direction), d)

    def geodesic_point(self, x: SpacePoint, y: SpacePoint, t: float) -> SpacePoint:
        """Returns the point at fraction t of the unique geodesic from x to y.

        Args:
            x (SpacePoint): Start.
            y (SpacePoint): End.
            t (float): Fraction in [0, 1].

        Raises:
            NonUniqueGeodesicError: If the geodesic is not unique.

        Returns:
            SpacePoint: The intermediate point."""
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"Fraction {t!r} is outside [0, 1]")
        if t == 0.0 or x == y:
            return x
        if t == 1.0:
            return y
        vector = self.log_direction(x, y)
        s = t * vector.mag
        if not (self.is_pole(x) or self.is_pole(y)):
            route = self._pole_route(x, y)
            if route == "apex":
                return self.point(x.r - s, x.phi) if s <= x.r else self.point(s - x.r, y.phi)
            if route == "far":
                first = self._diameter - x.r
                if s <= first:
                    return self.point(x.r + s, x.phi)
                return self.point(self._diameter - (s - first), y.phi)
        return self.exp(x, vector.direction, s)

    def direction_angle(self, x: SpacePoint, first: float, second: float) -> float:
        """Returns the angle between two directions at x, the intrinsic distance in Σ_x
        capped at π.

        Args:
            x (SpacePoint): Foot point.
            first (float): First direction.
            second (float): Second direction.

        Returns:
            float: Angle in [0, π]."""
        return min(float(circle_gap(first, second, self.directions_circle_length(x))), math.pi)

    # endregion

    # region measure
    def ball_volume(self, x: SpacePoint, radius: float, tol: float = 1e-8) -> float:
        """Returns the 2-dimensional Hausdorff measure of the closed ball B(x, radius):
        the integral over the distance s from the apex of sn_κ(s) times the angular
        measure of the ball on the circle of radius s.

        Args:
            x (SpacePoint): Center.
            radius (float): Radius, positive.
            tol (float, optional): Relative quadrature tolerance. Defaults to 1e-8.

        Returns:
            float: Area of the ball."""
        self._require(x)
        if radius <= 0:
            raise ValueError(f"Ball radius {radius!r} must be positive")
        k = self._kappa
        if self.is_pole(x):
            reach = min(radius, self._diameter)
            return self._theta_total * 2.0 * float(half_square(k, reach))
        top = min(x.r + radius, self._diameter)

        def density(s: float) -> float:
            if s <= 0.0 or radius < abs(s - x.r):
                return 0.0
            if radius >= float(model_side(k, s, x.r, math.pi)):
                measure = self._theta_total
            else:
                measure = min(2.0 * float(angle_from_sides(k, radius, s, x.r)), self._theta_total)
            return float(sn(k, s)) * measure

        kinks = {x.r - radius, radius - x.r}
        if k > 0:
            kinks.add(2.0 * self._diameter - radius - x.r)
        points = sorted(point for point in kinks if 0.0 < point < top)
        value, _ = integrate.quad(
            density, 0.0, top, points=points or None, epsabs=0.0, epsrel=tol, limit=200
        )
        return float(value)

    # endregion

    # region sampling
    def sample_ball(
        self,
        center: SpacePoint,
        radius: float,
        rng: np.random.Generator,
        n: int,
        r_min: float = 0.0,
    ) -> list[SpacePoint]:
        """Samples points at distance in [r_min, radius] from center along random
        minimizing geodesics (area-weighted in the distance).

        Args:
            center (SpacePoint): Center.
            radius (float): Outer radius.
            rng (np.random.Generator): Random generator.
            n (int): Number of points.
            r_min (float, optional): Inner radius. Defaults to 0.

        Raises:
            RegionError: If the radii are invalid or no valid geodesics are found.

        Returns:
            list[SpacePoint]: Sampled points."""
        self._require(center)
        if not 0.0 <= r_min < radius:
            raise RegionError(f"Invalid annulus [{r_min!r}, {radius!r}]")
        circle = self.directions_circle_length(center)
        points: list[SpacePoint] = []
        for _ in range(200):
            if len(points) >= n:
                break
            batch = max(16, 2 * (n - len(points)))
            lengths = np.sqrt(r_min**2 + rng.random(batch) * (radius**2 - r_min**2))
            directions = rng.random(batch) * circle
            radii, phis, valid = self.exp_arrays(center, directions, lengths)
            points.extend(
                self.point(r, phi) for r, phi, ok, length in zip(radii, phis, valid, lengths) if ok and length > 0
            )
        if len(points) < n:
            raise RegionError(f"Could not sample {n} points in the ball of radius {radius!r} around {center}")
        return points[:n]

    # endregion

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON descriptor {kind, theta_total | kappa}.

        Returns:
            dict[str, Any]: Descriptor."""
        data: dict[str, Any] = {"kind": self._kind}
        if self._kind == "model_plane":
            data["kappa"] = self._kappa
        else:
            data["theta_total"] = self._theta_total
        if self._curvature_lower_bound != self._kappa:
            data["curvature_lower_bound"] = self._curvature_lower_bound
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Space":
        """Creates a space from its JSON descriptor.

        Args:
            data (dict[str, Any]): {"kind": ..., "theta_total": ...} or {"kind": "model_plane", "kappa": ...}.

        Raises:
            ConfigError: If the descriptor is malformed.

        Returns:
            Space: The space."""
        try:
            kind = data["kind"]
            if kind == "model_plane":
                space = cls.model_plane(float(data["kappa"]))
            elif kind == "euclidean_cone":
                space = cls.euclidean_cone(float(data["theta_total"]))
            elif kind == "spherical_cone":
                space = cls.spherical_cone(float(data["theta_total"]))
            else:
                raise ConfigError([f"space.kind: unknown kind {kind!r}"])
        except (KeyError, TypeError, ValueError) as error:
            if isinstance(error, ConfigError):
                raise
            raise ConfigError([f"space: invalid descriptor {data!r} ({error})"]) from error
        if "curvature_lower_bound" in data:
            space = cls(kind, space.kappa, space.theta_total, float(data["curvature_lower_bound"]))
        return space


def distance(space: Space, x: SpacePoint, y: SpacePoint) -> float:
    """Returns |x, y| in the given space.

    Args:
        space (Space): The space.
        x (SpacePoint): First point.
        y (SpacePoint): Second point.

    Returns:
        float: Distance."""
    return space.distance(x, y)


def exp(space: Space, vector: TangentVector, t: float) -> SpacePoint:
    """Returns the point at length t along the geodesic leaving vector.base in the
    direction of vector (the magnitude is ignored).

    Args:
        space (Space): The space.
        vector (TangentVector): Direction.
        t (float): Length.

    Returns:
        SpacePoint: Endpoint."""
    return space.exp(vector.base, vector.direction, t)


def log_direction(space: Space, x: SpacePoint, y: SpacePoint) -> TangentVector:
    """Returns log_x(y) in the given space.

    Args:
        space (Space): The space.
        x (SpacePoint): Foot point.
        y (SpacePoint): Target.

    Returns:
        TangentVector: |xy|·↑_x^y."""
    return space.log_direction(x, y)


def directions_circle_length(space: Space, x: SpacePoint) -> float:
    """Returns the length of Σ_x.

    Args:
        space (Space): The space.
        x (SpacePoint): Point.

    Returns:
        float: Circle length."""
    return space.directions_circle_length(x)


def ball_volume(space: Space, x: SpacePoint, r: float, tol: float = 1e-8) -> float:
    """Returns the area of the closed ball B(x, r).

    Args:
        space (Space): The space.
        x (SpacePoint): Center.
        r (float): Radius.
        tol (float, optional): Relative tolerance. Defaults to 1e-8.

    Returns:
        float: Area."""
    return space.ball_volume(x, r, tol)


def geodesic_point(space: Space, x: SpacePoint, y: SpacePoint, t: float) -> SpacePoint:
    """Returns the point at fraction t of the geodesic xy.

    Args:
        space (Space): The space.
        x (SpacePoint): Start.
        y (SpacePoint): End.
        t (float): Fraction in [0, 1].

    Returns:
        SpacePoint: Intermediate point."""
    return space.geodesic_point(x, y, t)


def direction_angle(space: Space, x: SpacePoint, first: float, second: float) -> float:
    """Returns the angle between two directions at x.

    Args:
        space (Space): The space.
        x (SpacePoint): Foot point.
        first (float): First direction.
        second (float): Second direction.

    Returns:
        float: Angle in [0, π]."""
    return space.direction_angle(x, first, second)
