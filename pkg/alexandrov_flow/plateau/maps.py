"""This module contains maps sampled on grids: disk maps on a polar grid of the unit disk
and closed loops sampled on the unit circle, both with values in a space."""

import math
from typing import Any, Callable

import numpy as np

from alexandrov_flow.spaces import Space, SpacePoint
from alexandrov_flow.utils.errors import NonUniqueGeodesicError
from alexandrov_flow.utils.utils import TWO_PI

PolarMap = Callable[[float, float], SpacePoint]


def _blend(space: Space, first: SpacePoint, second: SpacePoint, t: float) -> SpacePoint:
    """Returns the point at fraction t of the geodesic, or the nearer end when the
    geodesic is not unique."""
    if first == second:
        return first
    try:
        return space.geodesic_point(first, second, t)
    except NonUniqueGeodesicError:
        return first if t < 0.5 else second


class DiskMap:
    """A map from the closed unit disk into a space, sampled on the polar grid with rings
    s_i = i/n_r (i = 0..n_r) and angles ψ_j = 2πj/n_φ. Ring 0 is the center of the disk
    and holds one value repeated n_φ times. Between nodes the map is the geodesic
    bilinear interpolation of the node values unless an exact map was given.

    Args:
        space (Space): Target space.
        values (list[list[SpacePoint]]): (n_r + 1) rings of n_φ values.
        exact (PolarMap, optional): Exact map (s, ψ) -> point. Defaults to None.

    Raises:
        ValueError: If the rings are ragged, too small or the center ring is not constant.

    Example:
        ```python
        from alexandrov_flow.plateau import DiskMap
        from alexandrov_flow.spaces import Space

        plane = Space.model_plane(0.0)
        identity = DiskMap.from_function(plane, plane.point, n_r=8, n_phi=32)
        ```
    """

    def __init__(self, space: Space, values: list[list[SpacePoint]], exact: PolarMap | None = None):
        if len(values) < 2 or len(values[0]) < 3:
            raise ValueError("A disk map needs at least 2 rings of at least 3 values")
        n_phi = len(values[0])
        if any(len(ring) != n_phi for ring in values):
            raise ValueError("All rings of a disk map must have the same number of values")
        if any(value != values[0][0] for value in values[0]):
            raise ValueError("The center ring of a disk map must be constant")
        self._space = space
        self._values = [list(ring) for ring in values]
        self._exact = exact

    @classmethod
    def from_function(cls, space: Space, function: PolarMap, n_r: int = 16, n_phi: int = 32) -> "DiskMap":
        """Samples an exact map (s, ψ) -> point and keeps it for evaluation between nodes.

        Args:
            space (Space): Target space.
            function (PolarMap): The map in polar coordinates of the disk.
            n_r (int, optional): Number of rings after the center. Defaults to 16.
            n_phi (int, optional): Angular samples. Defaults to 32.

        Returns:
            DiskMap: The sampled map."""
        center = function(0.0, 0.0)
        values = [[center] * n_phi]
        for i in range(1, n_r + 1):
            values.append([function(i / n_r, TWO_PI * j / n_phi) for j in range(n_phi)])
        return cls(space, values, function)

    @classmethod
    def constant(cls, space: Space, point: SpacePoint, n_r: int = 16, n_phi: int = 32) -> "DiskMap":
        """Returns the constant map.

        Args:
            space (Space): Target space.
            point (SpacePoint): The value.
            n_r (int, optional): Number of rings. Defaults to 16.
            n_phi (int, optional): Angular samples. Defaults to 32.

        Returns:
            DiskMap: The map."""
        return cls.from_function(space, lambda s, psi: point, n_r, n_phi)

    @property
    def space(self) -> Space:
        """Returns the target space.

        Returns:
            Space: The space."""
        return self._space

    @property
    def n_r(self) -> int:
        """Returns the number of rings after the center.

        Returns:
            int: n_r."""
        return len(self._values) - 1

    @property
    def n_phi(self) -> int:
        """Returns the number of angular samples.

        Returns:
            int: n_φ."""
        return len(self._values[0])

    @property
    def exact(self) -> bool:
        """Returns True if the map is evaluated exactly between nodes.

        Returns:
            bool: Whether an exact map is attached."""
        return self._exact is not None

    def node(self, i: int, j: int) -> SpacePoint:
        """Returns the value at ring i and angle index j (taken modulo n_φ).

        Args:
            i (int): Ring index.
            j (int): Angle index.

        Returns:
            SpacePoint: The value."""
        return self._values[i][j % self.n_phi]

    def boundary(self) -> list[SpacePoint]:
        """Returns the values on the boundary ring.

        Returns:
            list[SpacePoint]: n_φ values."""
        return list(self._values[-1])

    def evaluate(self, x1: float, x2: float) -> SpacePoint:
        """Returns u at the Cartesian point (x1, x2) of the closed unit disk.

        Args:
            x1 (float): First coordinate.
            x2 (float): Second coordinate.

        Raises:
            ValueError: If the point is outside the disk.

        Returns:
            SpacePoint: The value."""
        s = math.hypot(x1, x2)
        if s > 1.0 + 1e-12:
            raise ValueError(f"Point ({x1!r}, {x2!r}) is outside the unit disk")
        s = min(s, 1.0)
        psi = math.atan2(x2, x1) % TWO_PI
        if self._exact is not None:
            return self._exact(s, psi)
        ring = min(int(s * self.n_r), self.n_r - 1)
        radial = s * self.n_r - ring
        position = psi / TWO_PI * self.n_phi
        j = int(position) % self.n_phi
        angular = position - math.floor(position)
        inner = _blend(self._space, self.node(ring, j), self.node(ring, j + 1), angular)
        outer = _blend(self._space, self.node(ring + 1, j), self.node(ring + 1, j + 1), angular)
        return _blend(self._space, inner, outer, radial)

    def lipschitz(self) -> float:
        """Returns the discrete Lipschitz constant over the grid edges: radial edges against
        the ring spacing, angular edges against the chord 2s·sin(π/n_φ).

        Returns:
            float: Largest edge quotient."""
        distance = self._space.distance
        chord = 2.0 * math.sin(math.pi / self.n_phi)
        worst = 0.0
        for i in range(self.n_r):
            for j in range(self.n_phi):
                worst = max(worst, distance(self.node(i, j), self.node(i + 1, j)) * self.n_r)
        for i in range(1, self.n_r + 1):
            for j in range(self.n_phi):
                worst = max(worst, distance(self.node(i, j), self.node(i, j + 1)) / (chord * i / self.n_r))
        return worst

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Grid sizes and node values."""
        return {
            "space": self._space.to_dict(),
            "n_r": self.n_r,
            "n_phi": self.n_phi,
            "values": [[value.to_dict() for value in ring] for ring in self._values],
        }


class LoopMap:
    """A closed loop sampled at n equally spaced angles of the unit circle. The segment
    from the last sample back to the first closes the loop.

    Args:
        space (Space): Target space.
        points (list[SpacePoint]): Samples, at least 3.

    Raises:
        ValueError: If fewer than 3 samples are given.
    """

    def __init__(self, space: Space, points: list[SpacePoint]):
        if len(points) < 3:
            raise ValueError("A loop needs at least 3 samples")
        self._space = space
        self._points = list(points)

    @classmethod
    def circle(cls, space: Space, center: SpacePoint, radius: float, n: int = 32) -> "LoopMap":
        """Returns the metric circle S(center, radius) sampled at n equally spaced
        directions of Σ_center.

        Args:
            space (Space): Target space.
            center (SpacePoint): Center.
            radius (float): Radius, positive and below the injectivity scale.
            n (int, optional): Samples. Defaults to 32.

        Returns:
            LoopMap: The circle."""
        length = space.directions_circle_length(center)
        return cls(space, [space.exp(center, length * j / n, radius) for j in range(n)])

    @property
    def space(self) -> Space:
        """Returns the target space.

        Returns:
            Space: The space."""
        return self._space

    @property
    def points(self) -> list[SpacePoint]:
        """Returns the samples.

        Returns:
            list[SpacePoint]: Samples."""
        return list(self._points)

    @property
    def n(self) -> int:
        """Returns the number of samples.

        Returns:
            int: n."""
        return len(self._points)

    def segment_lengths(self) -> np.ndarray:
        """Returns the distances between consecutive samples, closing segment last.

        Returns:
            np.ndarray: n distances."""
        return np.array(
            [self._space.distance(a, b) for a, b in zip(self._points, self._points[1:] + self._points[:1])]
        )

    @property
    def length(self) -> float:
        """Returns the length of the inscribed geodesic polygon.

        Returns:
            float: Length estimate."""
        return float(self.segment_lengths().sum())

    def lipschitz(self) -> float:
        """Returns the discrete Lipschitz constant against the chord 2·sin(π/n) of the unit circle.

        Returns:
            float: Largest segment quotient."""
        return float(self.segment_lengths().max() / (2.0 * math.sin(math.pi / self.n)))

    def resample_by_arclength(self, n: int) -> "LoopMap":
        """Returns n samples equally spaced by arclength along the geodesic polygon,
        starting at the first sample.

        Args:
            n (int): Number of samples, at least 3.

        Returns:
            LoopMap: The reparametrized loop."""
        lengths = self.segment_lengths()
        total = float(lengths.sum())
        if total == 0.0:
            return LoopMap(self._space, [self._points[0]] * n)
        cumulative = np.concatenate([[0.0], np.cumsum(lengths)])
        closed = self._points + self._points[:1]
        samples = []
        for k in range(n):
            target = total * k / n
            segment = min(int(np.searchsorted(cumulative, target, side="right")) - 1, self.n - 1)
            span = lengths[segment]
            fraction = 0.0 if span == 0 else min(max((target - cumulative[segment]) / span, 0.0), 1.0)
            samples.append(_blend(self._space, closed[segment], closed[segment + 1], fraction))
        return LoopMap(self._space, samples)

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Samples and length."""
        return {
            "space": self._space.to_dict(),
            "points": [point.to_dict() for point in self._points],
            "length": self.length,
        }
