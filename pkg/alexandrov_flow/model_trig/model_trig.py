"""This module contains the κ-parameterized trigonometry of the model planes M_κ:
the generalized sine and cosine, the cosine law and comparison triangles.

All functions accept numpy arrays for the length arguments and return a float
when every length argument is a scalar."""

import math
from dataclasses import dataclass
from typing import Any, Literal

import numpy as np

from alexandrov_flow.utils.errors import DegenerateError, DomainError

SERIES_CUTOFF = 1e-4
SIDE_TOLERANCE = 1e-9


def _out(value: np.ndarray) -> Any:
    return float(value) if np.ndim(value) == 0 else value


def sn(kappa: float, t: Any) -> Any:
    """Returns sn_κ(t), the solution of f'' + κf = 0 with f(0) = 0, f'(0) = 1.
    When |κ|t² is below the series cutoff the truncated power series is used.

    Args:
        kappa (float): Curvature of the model plane.
        t (float | np.ndarray): Length(s).

    Returns:
        float | np.ndarray: sn_κ(t).

    Examples:
        ```python
        from alexandrov_flow.model_trig import sn

        sn(0, 3.5)  # 3.5
        sn(-1, 1.0)  # sinh(1)
        ```
    """
    t = np.asarray(t, dtype=float)
    if kappa == 0:
        return _out(t.copy())
    x = kappa * t * t
    root = math.sqrt(abs(kappa))
    with np.errstate(over="ignore"):
        closed = np.sin(root * t) / root if kappa > 0 else np.sinh(root * t) / root
    series = t * (1.0 - x / 6.0 * (1.0 - x / 20.0 * (1.0 - x / 42.0 * (1.0 - x / 72.0))))
    return _out(np.where(np.abs(x) < SERIES_CUTOFF, series, closed))


def cs(kappa: float, t: Any) -> Any:
    """Returns cs_κ(t) = sn_κ'(t).

    Args:
        kappa (float): Curvature of the model plane.
        t (float | np.ndarray): Length(s).

    Returns:
        float | np.ndarray: cs_κ(t)."""
    t = np.asarray(t, dtype=float)
    if kappa == 0:
        return _out(np.ones_like(t))
    x = kappa * t * t
    root = math.sqrt(abs(kappa))
    with np.errstate(over="ignore"):
        closed = np.cos(root * t) if kappa > 0 else np.cosh(root * t)
    series = 1.0 - x / 2.0 * (1.0 - x / 12.0 * (1.0 - x / 30.0 * (1.0 - x / 56.0)))
    return _out(np.where(np.abs(x) < SERIES_CUTOFF, series, closed))


def diameter(kappa: float) -> float:
    """Returns the diameter π/√κ of M_κ, infinite for κ <= 0.

    Args:
        kappa (float): Curvature of the model plane.

    Returns:
        float: Diameter of M_κ."""
    return math.pi / math.sqrt(kappa) if kappa > 0 else math.inf


def asn(kappa: float, y: Any) -> Any:
    """Inverse of sn_κ on [0, diameter/2] (principal branch).

    Args:
        kappa (float): Curvature of the model plane.
        y (float | np.ndarray): Nonnegative value(s) of sn_κ.

    Raises:
        DomainError: If κ > 0 and y exceeds 1/√κ beyond rounding.

    Returns:
        float | np.ndarray: Length(s) t with sn_κ(t) = y."""
    y = np.asarray(y, dtype=float)
    if kappa == 0:
        return _out(y.copy())
    root = math.sqrt(abs(kappa))
    if kappa > 0:
        z = root * y
        if np.any(z > 1.0 + 1e-12):
            raise DomainError(f"sn_{kappa} never reaches {float(np.max(y))!r}")
        return _out(np.arcsin(np.clip(z, -1.0, 1.0)) / root)
    return _out(np.arcsinh(root * y) / root)


def half_square(kappa: float, x: Any) -> Any:
    """Returns sn_κ(x/2)², which equals (1 - cs_κ(x)) / (2κ) without the cancellation.

    Args:
        kappa (float): Curvature of the model plane.
        x (float | np.ndarray): Length(s).

    Returns:
        float | np.ndarray: sn_κ(x/2)²."""
    half = sn(kappa, np.asarray(x, dtype=float) / 2.0)
    return _out(np.asarray(half) ** 2)


def _check_radial(kappa: float, *lengths: Any) -> None:
    for length in lengths:
        if np.any(np.asarray(length) < -SIDE_TOLERANCE):
            raise DomainError("Lengths must be nonnegative")
        if kappa > 0 and np.any(np.asarray(length) > diameter(kappa) * (1.0 + 1e-12)):
            raise DomainError(f"Length exceeds the diameter {diameter(kappa)!r} of M_{kappa}")


def model_side(kappa: float, b: Any, c: Any, theta: Any) -> Any:
    """Returns the side opposite to the angle θ of a triangle in M_κ with adjacent
    sides b and c, i.e. the ℓ with cs_κ(ℓ) = cs_κ(b)cs_κ(c) + κ sn_κ(b)sn_κ(c)cos θ.
    The half-angle form sn(ℓ/2)² = sn((b-c)/2)² + sn(b)sn(c)sin²(θ/2) is evaluated.

    Args:
        kappa (float): Curvature of the model plane.
        b (float | np.ndarray): First adjacent side.
        c (float | np.ndarray): Second adjacent side.
        theta (float | np.ndarray): Angle between them, in [0, π].

    Raises:
        DomainError: If κ > 0 and a side is longer than the diameter of M_κ,
            or θ is outside [0, π].

    Returns:
        float | np.ndarray: The opposite side ℓ.

    Examples:
        ```python
        from alexandrov_flow.model_trig import model_side

        model_side(0, 3, 4, math.pi / 2)  # 5.0
        ```
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < -1e-12) or np.any(theta > math.pi + 1e-12):
        raise DomainError("The angle of model_side must lie in [0, π]")
    _check_radial(kappa, b, c)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    sines = np.asarray(sn(kappa, b)) * np.asarray(sn(kappa, c))
    quarter = np.asarray(half_square(kappa, b - c)) + np.maximum(sines, 0.0) * np.sin(theta / 2.0) ** 2
    quarter = np.maximum(quarter, 0.0)
    if kappa > 0:
        quarter = np.minimum(quarter, 1.0 / kappa)
    return _out(2.0 * np.asarray(asn(kappa, np.sqrt(quarter))))


def angle_from_sides(kappa: float, a: Any, b: Any, c: Any) -> Any:
    """Returns the angle opposite to the side a of the M_κ triangle with sides a, b, c.

    Args:
        kappa (float): Curvature of the model plane.
        a (float | np.ndarray): Opposite side.
        b (float | np.ndarray): First adjacent side, positive.
        c (float | np.ndarray): Second adjacent side, positive.

    Raises:
        DegenerateError: If an adjacent side is zero.

    Returns:
        float | np.ndarray: Angle in [0, π]."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    sines = np.asarray(sn(kappa, b)) * np.asarray(sn(kappa, c))
    if np.any(sines <= 0.0):
        raise DegenerateError("Comparison angle is undefined when an adjacent side vanishes")
    opposite = np.asarray(half_square(kappa, a))
    sin_half = (opposite - np.asarray(half_square(kappa, b - c))) / sines
    cos_half = (np.asarray(half_square(kappa, b + c)) - opposite) / sines
    return _out(2.0 * np.arctan2(np.sqrt(np.maximum(sin_half, 0.0)), np.sqrt(np.maximum(cos_half, 0.0))))


@dataclass(frozen=True)
class TriangleSides:
    """Side lengths of a triangle pqr: a = |pq|, b = |qr|, c = |rp|.

    Example:
        ```python
        from alexandrov_flow.model_trig import TriangleSides, comparison_angle

        comparison_angle(0, TriangleSides(3, 4, 5), "q")  # π/2
        ```
    """

    a: float
    b: float
    c: float

    @property
    def perimeter(self) -> float:
        """Returns the perimeter of the triangle.

        Returns:
            float: a + b + c."""
        return self.a + self.b + self.c

    def validate(self, kappa: float) -> None:
        """Checks the triangle inequalities (up to rounding) and, for κ > 0,
        the perimeter cap 2π/√κ.

        Args:
            kappa (float): Curvature of the model plane.

        Raises:
            DomainError: If the sides can't form a triangle in M_κ."""
        sides = (self.a, self.b, self.c)
        if min(sides) < 0:
            raise DomainError(f"Negative side in {sides}")
        slack = SIDE_TOLERANCE * max(1.0, self.perimeter)
        for index, side in enumerate(sides):
            if side > self.perimeter - side + slack:
                raise DomainError(f"Side {index} violates the triangle inequality in {sides}")
        if kappa > 0 and self.perimeter >= 2.0 * diameter(kappa):
            raise DomainError(f"Perimeter {self.perimeter!r} is not below 2π/√κ for κ = {kappa}")


def comparison_angle(kappa: float, sides: TriangleSides, at_vertex: Literal["p", "q", "r"]) -> float:
    """Returns the comparison angle ∠̃ at a vertex of the triangle pqr, i.e. the angle of
    the M_κ triangle with the same side lengths.

    Args:
        kappa (float): Curvature of the model plane.
        sides (TriangleSides): Sides |pq|, |qr|, |rp|.
        at_vertex (str): One of "p", "q", "r".

    Raises:
        DomainError: If the sides don't form a triangle in M_κ.
        DegenerateError: If a side adjacent to the vertex is zero.
        ValueError: If the vertex name is unknown.

    Returns:
        float: Comparison angle in [0, π]."""
    sides.validate(kappa)
    layout = {
        "p": (sides.b, sides.a, sides.c),
        "q": (sides.c, sides.a, sides.b),
        "r": (sides.a, sides.b, sides.c),
    }
    if at_vertex not in layout:
        raise ValueError(f"Unknown vertex {at_vertex!r}, expected 'p', 'q' or 'r'")
    opposite, first, second = layout[at_vertex]
    if first == 0 or second == 0:
        raise DegenerateError(f"Side adjacent to vertex {at_vertex} is zero")
    return float(angle_from_sides(kappa, opposite, first, second))


def comparison_point_distance(kappa: float, sides: TriangleSides, t: float) -> float:
    """Returns |p̃x̃| where x̃ lies on the comparison side q̃r̃ at arclength t·|qr| from q̃.

    The value comes from the identity cs_κ(ℓ)sn_κ(d) = cs_κ(|pq|)sn_κ(d-s) + cs_κ(|pr|)sn_κ(s),
    rewritten in half-angle form so that it stays accurate for small κ.

    Args:
        kappa (float): Curvature of the model plane.
        sides (TriangleSides): Sides |pq|, |qr|, |rp|.
        t (float): Fraction along qr, in [0, 1].

    Raises:
        ValueError: If t is outside [0, 1].
        DomainError: If the sides don't form a triangle in M_κ.

    Returns:
        float: Distance |p̃x̃|."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"Fraction {t!r} is outside [0, 1]")
    sides.validate(kappa)
    length = sides.b
    if t == 0.0 or length == 0.0:
        return float(sides.a)
    if t == 1.0:
        return float(sides.c)
    s = t * length
    base = sn(kappa, length)
    if base <= 0.0:
        raise DomainError(f"Side qr = {length!r} is not shorter than the diameter of M_{kappa}")
    quarter = (
        half_square(kappa, sides.a) * sn(kappa, length - s)
        + half_square(kappa, sides.c) * sn(kappa, s)
        - 2.0 * sn(kappa, (length - s) / 2.0) * sn(kappa, s / 2.0) * sn(kappa, length / 2.0)
    ) / base
    quarter = max(quarter, 0.0)
    if kappa > 0:
        quarter = min(quarter, 1.0 / kappa)
    return 2.0 * float(asn(kappa, math.sqrt(quarter)))


def distance_concavity_modulus(kappa: float, d: Any) -> Any:
    """Returns cs_κ(d)/sn_κ(d), the concavity modulus of a distance function at distance d
    (1/d when κ = 0).

    Args:
        kappa (float): Curvature lower bound.
        d (float | np.ndarray): Distance(s) to the set, positive.

    Raises:
        DegenerateError: If a distance is not positive.

    Returns:
        float | np.ndarray: The modulus."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise DegenerateError("The concavity modulus is undefined on the set itself")
    if kappa == 0:
        return _out(1.0 / d)
    return _out(np.asarray(cs(kappa, d)) / np.asarray(sn(kappa, d)))


def lipschitz_contraction_rate(radius: float, delta: float) -> float:
    """Returns λ = cosh R / sinh(R(1-δ)), the contraction exponent of the flow toward
    the center of a ball of radius R restricted to the sub-ball of radius δR.

    Args:
        radius (float): Radius R of the sphere defining the field.
        delta (float): Fraction δ in (0, 1).

    Raises:
        ValueError: If R <= 0 or δ is outside (0, 1).

    Returns:
        float: λ."""
    if radius <= 0 or not 0.0 < delta < 1.0:
        raise ValueError(f"Expected R > 0 and 0 < δ < 1, got R={radius!r}, δ={delta!r}")
    return math.cosh(radius) / math.sinh(radius * (1.0 - delta))
