"""This module contains the Ricci-type checks: Rényi entropy, the one-dimensional reduced
curvature-dimension inequality along monotone displacement, Bishop–Gromov monotonicity of
ball volumes and the averaging-operator bound chain ending in the simplicial-volume bound."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from alexandrov_flow.model_trig import CDParams, bg_profile, c_coeff, sigma, simplicial_volume_coefficient
from alexandrov_flow.ricci.density import Coupling, Density1D, TransportPiece, displacement_geodesic
from alexandrov_flow.spaces import Space, SpacePoint

logger = logging.getLogger(__name__)

RHS_TOLERANCE = 1e-8
RHS_MIN_NODES = 8
RHS_MAX_NODES = 1 << 14
BALL_VOLUME_TOLERANCE = 1e-10


def renyi_entropy(nu: Density1D, n_prime: float) -> float:
    """Returns the Rényi entropy S_{N'}(ν) = -∫ρ^{1-1/N'} dx, exact for a piecewise-constant
    density. For N' = 1 this is minus the length of the support.

    Args:
        nu (Density1D): Density.
        n_prime (float): Exponent parameter N' >= 1.

    Raises:
        ValueError: If N' < 1.

    Returns:
        float: Entropy.

    Example:
        ```python
        from alexandrov_flow.ricci import Density1D, renyi_entropy

        renyi_entropy(Density1D.uniform(0.0, 2.0), 2.0)  # -√2
        ```
    """
    if n_prime < 1:
        raise ValueError(f"Entropy exponent N' must be at least 1, got {n_prime!r}")
    positive = nu.values > 0
    values = nu.values[positive]
    lengths = nu.lengths[positive]
    if n_prime == 1:
        return -float(np.sum(lengths))
    return -float(np.sum(values ** (1.0 - 1.0 / n_prime) * lengths))


def _piece_integral(piece: TransportPiece, params: CDParams, t: float, nodes: int) -> float:
    """Returns ∫ over the piece of σ^{(1-t)}(d)ρ₀^{-1/N'} + σ^{(t)}(d)ρ₁^{-1/N'} dq with the
    midpoint rule, or +∞ when a distortion coefficient is infinite."""
    start = piece.target[0] - piece.source[0]
    end = piece.target[1] - piece.source[1]
    u = (np.arange(nodes) + 0.5) / nodes
    gaps = np.abs(start + (end - start) * u)
    weight0 = piece.source_density ** (-1.0 / params.N)
    weight1 = piece.target_density ** (-1.0 / params.N)
    total = 0.0
    for gap in gaps:
        early = sigma(params, 1.0 - t, float(gap))
        late = sigma(params, t, float(gap))
        if early.infinite or late.infinite:
            return math.inf
        total += early.value * weight0 + late.value * weight1
    return piece.mass * total / nodes


def _rhs(coupling: Coupling, params: CDParams, t: float) -> float:
    """Returns the right-hand side -∫[...]dq, refining the midpoint rule until two levels
    agree within 1e-8. May be -∞."""
    nodes = RHS_MIN_NODES
    previous = math.nan
    while True:
        integral = sum(_piece_integral(piece, params, t, nodes) for piece in coupling.pieces)
        if math.isinf(integral):
            return -math.inf
        if abs(integral - previous) < RHS_TOLERANCE or nodes >= RHS_MAX_NODES:
            return -integral
        previous = integral
        nodes *= 2


@dataclass
class CDStarReport:
    """Outcome of the reduced curvature-dimension check. A row's margin is RHS - LHS;
    negative means the inequality is violated.

    Args:
        params (CDParams): The pair (K, N).
        rows (list[dict[str, Any]]): One row per (N', t) with lhs, rhs, margin and trivial.
        min_margin (float): Smallest margin over the grid.
    """

    params: CDParams
    rows: list[dict[str, Any]] = field(default_factory=list)
    min_margin: float = math.inf

    def passed(self, tol: float = RHS_TOLERANCE) -> bool:
        """Returns True if every margin is at least -tol.

        Args:
            tol (float, optional): Tolerance. Defaults to 1e-8.

        Returns:
            bool: Verdict."""
        return self.min_margin >= -tol

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Report fields and the verdict."""
        return {
            "K": self.params.K,
            "N": self.params.N,
            "rows": self.rows,
            "min_margin": self.min_margin,
            "passed": self.passed(),
        }


def cd_star_check(
    nu0: Density1D,
    nu1: Density1D,
    params: CDParams,
    t_grid: Sequence[float],
    n_prime_grid: Sequence[float],
) -> CDStarReport:
    """Checks S_{N'}(Γ(t)) <= -∫[σ_{K,N'}^{(1-t)}(d)ρ₀^{-1/N'}(x₀) + σ_{K,N'}^{(t)}(d)ρ₁^{-1/N'}(x₁)]dq
    on the line along the monotone displacement Γ from ν₀ to ν₁. An infinite coefficient
    makes the right side -∞ and the row holds trivially.

    Args:
        nu0 (Density1D): Start density.
        nu1 (Density1D): End density.
        params (CDParams): The pair (K, N).
        t_grid (Sequence[float]): Times in [0, 1].
        n_prime_grid (Sequence[float]): Exponents N' >= N.

    Raises:
        ValueError: If some N' < N.

    Returns:
        CDStarReport: Margins per grid point."""
    for n_prime in n_prime_grid:
        if n_prime < params.N:
            raise ValueError(f"N' = {n_prime!r} is below N = {params.N!r}")
    report = CDStarReport(params)
    for n_prime in n_prime_grid:
        exponent_params = params.with_dimension(float(n_prime))
        for t in t_grid:
            interpolated, coupling = displacement_geodesic(nu0, nu1, float(t))
            lhs = renyi_entropy(interpolated, float(n_prime))
            rhs = _rhs(coupling, exponent_params, float(t))
            trivial = math.isinf(rhs)
            margin = math.inf if trivial else rhs - lhs
            report.rows.append(
                {"n_prime": float(n_prime), "t": float(t), "lhs": lhs, "rhs": rhs, "margin": margin, "trivial": trivial}
            )
            report.min_margin = min(report.min_margin, margin)
    logger.debug("CD*(%s, %s) check: min margin %.3e", params.K, params.N, report.min_margin)
    return report


@dataclass
class BgReport:
    """Bishop–Gromov monotonicity of v_x(r)/v̄_{K,N}(r) at one center.

    Args:
        center (SpacePoint): Ball center.
        params (CDParams): The pair (K, N).
        radii (list[float]): Radii grid.
        volumes (list[float]): Ball areas.
        ratios (list[float]): Area over model profile.
        max_uptick (float): Largest increase between consecutive ratios.
        tol (float): Allowed uptick.
    """

    center: SpacePoint
    params: CDParams
    radii: list[float]
    volumes: list[float]
    ratios: list[float]
    max_uptick: float
    tol: float

    @property
    def passed(self) -> bool:
        """Returns True if the ratio never grows by more than tol.

        Returns:
            bool: Verdict."""
        return self.max_uptick <= self.tol

    def to_csv_rows(self) -> list[list[Any]]:
        """Returns (r, volume, ratio) rows.

        Returns:
            list[list[Any]]: Rows."""
        return [[r, v, q] for r, v, q in zip(self.radii, self.volumes, self.ratios)]

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Report fields and the verdict."""
        return {
            "center": self.center.to_dict(),
            "K": self.params.K,
            "N": self.params.N,
            "radii": self.radii,
            "ratios": self.ratios,
            "max_uptick": self.max_uptick,
            "tol": self.tol,
            "passed": self.passed,
        }


def bg_check(space: Space, center: SpacePoint, params: CDParams, radii: Sequence[float], tol: float = 1e-6) -> BgReport:
    """Checks that v_x(r)/v̄_{K,N}(r) is nonincreasing over a radii grid.

    Args:
        space (Space): The space.
        center (SpacePoint): Ball center x.
        params (CDParams): The pair (K, N) with N > 1.
        radii (Sequence[float]): Increasing positive radii.
        tol (float, optional): Allowed uptick. Defaults to 1e-6.

    Raises:
        ValueError: If the radii are not increasing and positive.

    Returns:
        BgReport: Ratios and the largest uptick."""
    radii = [float(r) for r in radii]
    if not radii or radii[0] <= 0 or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("Radii must be positive and strictly increasing")
    volumes = [space.ball_volume(center, r, tol=BALL_VOLUME_TOLERANCE) for r in radii]
    ratios = [v / bg_profile(params, r) for v, r in zip(volumes, radii)]
    upticks = [b - a for a, b in zip(ratios, ratios[1:])]
    max_uptick = max(upticks) if upticks else 0.0
    logger.debug("Bishop-Gromov at %s: max uptick %.3e", center, max_uptick)
    return BgReport(center, params, radii, volumes, ratios, max_uptick, tol)


def averaging_cutoff(radius: float, eps: float, t: float) -> float:
    """Returns the ramp ψ(t): 1 for t <= R - ε, (R - t)/ε on [R - ε, R], 0 for t >= R.

    Args:
        radius (float): R.
        eps (float): Ramp width ε with 0 < ε < R.
        t (float): Distance.

    Raises:
        ValueError: If not 0 < ε < R.

    Returns:
        float: ψ(t)."""
    if not 0.0 < eps < radius:
        raise ValueError(f"Expected 0 < ε < R, got ε={eps!r}, R={radius!r}")
    if t <= radius - eps:
        return 1.0
    if t >= radius:
        return 0.0
    return (radius - t) / eps


@dataclass
class BoundTable:
    """Simplicial-volume bounds n!·C_{K,N}(R, ε)ⁿ·𝓗ⁿ over a ladder of (R, ε).

    Args:
        params (CDParams): The pair (K, N).
        n (int): Dimension.
        hausdorff_n (float): Volume 𝓗ⁿ(X).
        rows (list[tuple[float, float, float, float]]): (R, ε, C, bound).
        limit (float): n!·√(-K(N-1))ⁿ·𝓗ⁿ.
        monotone (bool): Bounds are nonincreasing along the ladder.
        converged (bool): The last bound is within conv_tol of the limit.
    """

    params: CDParams
    n: int
    hausdorff_n: float
    rows: list[tuple[float, float, float, float]]
    limit: float
    monotone: bool
    converged: bool

    @property
    def passed(self) -> bool:
        """Returns True if the ladder is monotone and converged.

        Returns:
            bool: Verdict."""
        return self.monotone and self.converged

    def to_csv_rows(self) -> list[list[Any]]:
        """Returns (R, eps, C, bound) rows.

        Returns:
            list[list[Any]]: Rows."""
        return [list(row) for row in self.rows]

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Report fields and the verdict."""
        return {
            "K": self.params.K,
            "N": self.params.N,
            "n": self.n,
            "hausdorff_n": self.hausdorff_n,
            "rows": [list(row) for row in self.rows],
            "limit": self.limit,
            "monotone": self.monotone,
            "converged": self.converged,
            "passed": self.passed,
        }


def simplicial_volume_pipeline(
    params: CDParams,
    n: int,
    hausdorff_n: float,
    radius_ladder: Sequence[float],
    eps_ladder: Sequence[float],
    conv_tol: float = 1e-3,
) -> BoundTable:
    """Tabulates n!·C_{K,N}(R, ε)ⁿ·𝓗ⁿ along a ladder of growing R and shrinking ε
    (paired index by index) and compares the last entry with the limit bound.

    Args:
        params (CDParams): The pair (K, N) with K < 0 and N > 1.
        n (int): Dimension.
        hausdorff_n (float): Volume 𝓗ⁿ(X), nonnegative.
        radius_ladder (Sequence[float]): Radii R.
        eps_ladder (Sequence[float]): Ramp widths ε, same length.
        conv_tol (float, optional): Relative convergence tolerance. Defaults to 1e-3.

    Raises:
        ValueError: If the ladders differ in length or are empty, or on invalid parameters.

    Returns:
        BoundTable: The table and the limit."""
    if len(radius_ladder) != len(eps_ladder) or not radius_ladder:
        raise ValueError("R and ε ladders must be nonempty and of equal length")
    if hausdorff_n < 0:
        raise ValueError(f"Volume {hausdorff_n!r} must be nonnegative")
    limit = simplicial_volume_coefficient(n, "cd", params=params) * hausdorff_n
    factorial = float(math.factorial(n))
    rows = []
    for radius, eps in zip(radius_ladder, eps_ladder):
        coefficient = c_coeff(params, float(radius), float(eps))
        rows.append((float(radius), float(eps), coefficient, factorial * coefficient**n * hausdorff_n))
    bounds = [row[3] for row in rows]
    monotone = all(b <= a * (1.0 + 1e-12) for a, b in zip(bounds, bounds[1:]))
    converged = abs(bounds[-1] - limit) <= conv_tol * max(limit, 1.0)
    logger.info("Simplicial-volume bound: last %.6f, limit %.6f", bounds[-1], limit)
    return BoundTable(params, n, hausdorff_n, rows, limit, monotone, converged)
