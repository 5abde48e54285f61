"""This module contains piecewise-constant probability densities on the line and their
monotone (optimal) transport: the common mass partition, displacement interpolation
and the quadratic Wasserstein distance."""

from dataclasses import dataclass
from typing import Any

import numpy as np

NORMALIZATION_TOLERANCE = 1e-10


class Density1D:
    """A probability density on the line, constant on the cells of a grid.

    Args:
        grid (np.ndarray): Increasing breakpoints, at least two.
        values (np.ndarray): Nonnegative density per cell (len(grid) - 1 values).
        normalize (bool, optional): Rescale the values to total mass 1. Defaults to False.

    Raises:
        ValueError: If the grid is not increasing, a value is negative or the mass is
            not 1 within 1e-10 (without normalize).

    Example:
        ```python
        from alexandrov_flow.ricci import Density1D

        nu = Density1D.uniform(0.0, 2.0)
        nu.values  # [0.5]
        ```
    """

    def __init__(self, grid: Any, values: Any, normalize: bool = False):
        grid = np.asarray(grid, dtype=float)
        values = np.asarray(values, dtype=float)
        if grid.ndim != 1 or len(grid) < 2 or len(values) != len(grid) - 1:
            raise ValueError("A density needs n + 1 breakpoints and n cell values")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("Density breakpoints must be strictly increasing")
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise ValueError("Density values must be finite and nonnegative")
        mass = float(np.sum(values * np.diff(grid)))
        if normalize:
            if mass <= 0:
                raise ValueError("Can't normalize a density of zero mass")
            values = values / mass
        elif abs(mass - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"Density mass is {mass!r}, expected 1")
        self._grid = grid
        self._values = values

    @classmethod
    def uniform(cls, a: float, b: float) -> "Density1D":
        """Returns the uniform density on [a, b].

        Args:
            a (float): Left end.
            b (float): Right end, larger than a.

        Returns:
            Density1D: Uniform density."""
        return cls([a, b], [1.0 / (b - a)])

    @property
    def grid(self) -> np.ndarray:
        """Returns the breakpoints.

        Returns:
            np.ndarray: Grid."""
        return self._grid.copy()

    @property
    def values(self) -> np.ndarray:
        """Returns the cell densities.

        Returns:
            np.ndarray: Values."""
        return self._values.copy()

    @property
    def lengths(self) -> np.ndarray:
        """Returns the cell lengths.

        Returns:
            np.ndarray: Lengths."""
        return np.diff(self._grid)

    @property
    def masses(self) -> np.ndarray:
        """Returns the cell masses.

        Returns:
            np.ndarray: Masses."""
        return self._values * self.lengths

    def cdf_breakpoints(self) -> np.ndarray:
        """Returns the cumulative mass at every breakpoint.

        Returns:
            np.ndarray: CDF values, from 0 to 1."""
        cumulative = np.concatenate([[0.0], np.cumsum(self.masses)])
        return cumulative / cumulative[-1]

    def density_at(self, x: Any) -> Any:
        """Returns the density at x (0 outside the grid).

        Args:
            x (float | np.ndarray): Position(s).

        Returns:
            float | np.ndarray: Density."""
        x = np.asarray(x, dtype=float)
        cells = np.clip(np.searchsorted(self._grid, x, side="right") - 1, 0, len(self._values) - 1)
        inside = (x >= self._grid[0]) & (x < self._grid[-1])
        result = np.where(inside, self._values[cells], 0.0)
        return float(result) if result.ndim == 0 else result

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: {"grid", "values"}."""
        return {"grid": self._grid.tolist(), "values": self._values.tolist()}

    def __repr__(self) -> str:
        return f"Density1D(support=[{self._grid[0]!r}, {self._grid[-1]!r}], cells={len(self._values)})"


def random_density(
    rng: np.random.Generator,
    cells: int = 4,
    low: float = 0.0,
    high: float = 4.0,
    min_width: float = 0.05,
) -> Density1D:
    """Returns a random piecewise-constant density with support inside [low, high].

    Args:
        rng (np.random.Generator): Random generator.
        cells (int, optional): Number of cells. Defaults to 4.
        low (float, optional): Lower bound of the support. Defaults to 0.
        high (float, optional): Upper bound of the support. Defaults to 4.
        min_width (float, optional): Smallest cell width. Defaults to 0.05.

    Returns:
        Density1D: Normalized density."""
    widths = min_width + rng.random(cells) * (high - low) / (2.0 * cells)
    start = low + rng.random() * max(high - low - float(widths.sum()), 0.0)
    grid = start + np.concatenate([[0.0], np.cumsum(widths)])
    values = 0.1 + rng.random(cells)
    return Density1D(grid, values, normalize=True)


@dataclass(frozen=True)
class TransportPiece:
    """A piece of the monotone coupling: `mass` spread uniformly over `source` and sent
    affinely onto `target`, also uniformly."""

    mass: float
    source: tuple[float, float]
    target: tuple[float, float]

    @property
    def source_density(self) -> float:
        """Returns the density of ν₀ on the piece.

        Returns:
            float: mass / source length."""
        return self.mass / (self.source[1] - self.source[0])

    @property
    def target_density(self) -> float:
        """Returns the density of ν₁ on the piece.

        Returns:
            float: mass / target length."""
        return self.mass / (self.target[1] - self.target[0])

    def at(self, t: float) -> tuple[float, float]:
        """Returns the interval carrying the piece at time t.

        Args:
            t (float): Time in [0, 1].

        Returns:
            tuple[float, float]: Interval."""
        return (
            (1.0 - t) * self.source[0] + t * self.target[0],
            (1.0 - t) * self.source[1] + t * self.target[1],
        )


@dataclass(frozen=True)
class Coupling:
    """The monotone coupling of two densities as a list of transport pieces."""

    pieces: tuple[TransportPiece, ...]

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Pieces as (mass, source, target)."""
        return {"pieces": [[p.mass, list(p.source), list(p.target)] for p in self.pieces]}


def _quantile_interval(density: Density1D, cdf: np.ndarray, low: float, high: float) -> tuple[float, float]:
    cell = int(np.searchsorted(cdf, 0.5 * (low + high), side="right")) - 1
    cell = min(max(cell, 0), len(density.values) - 1)
    value = density.values[cell]
    left = density.grid[cell]
    return left + (low - cdf[cell]) / value, left + (high - cdf[cell]) / value


def monotone_coupling(nu0: Density1D, nu1: Density1D) -> Coupling:
    """Returns the monotone rearrangement coupling ν₀ → ν₁ on the common refinement of the
    two mass partitions.

    Args:
        nu0 (Density1D): Source.
        nu1 (Density1D): Target.

    Returns:
        Coupling: Transport pieces ordered along the line."""
    cdf0 = nu0.cdf_breakpoints()
    cdf1 = nu1.cdf_breakpoints()
    levels = np.unique(np.concatenate([cdf0, cdf1]))
    pieces = []
    for low, high in zip(levels[:-1], levels[1:]):
        if high - low <= 1e-15:
            continue
        pieces.append(
            TransportPiece(
                float(high - low),
                _quantile_interval(nu0, cdf0, low, high),
                _quantile_interval(nu1, cdf1, low, high),
            )
        )
    return Coupling(tuple(pieces))


def pushforward(coupling: Coupling, t: float) -> Density1D:
    """Returns the density of ((1-t)id + tT)_#ν₀ carried by the coupling pieces.

    Args:
        coupling (Coupling): Monotone coupling.
        t (float): Time in [0, 1].

    Returns:
        Density1D: Interpolated density."""
    grid: list[float] = []
    values: list[float] = []
    for piece in coupling.pieces:
        left, right = piece.at(t)
        if not grid:
            grid.append(left)
        elif left > grid[-1]:
            values.append(0.0)
            grid.append(left)
        left = grid[-1]
        if right <= left:
            continue
        grid.append(right)
        values.append(piece.mass / (right - left))
    return Density1D(grid, values, normalize=True)


def displacement_geodesic(nu0: Density1D, nu1: Density1D, t: float) -> tuple[Density1D, Coupling]:
    """Returns Γ(t) = ((1-t)id + tT)_#ν₀ with T the monotone map, and the coupling.

    Args:
        nu0 (Density1D): Start.
        nu1 (Density1D): End.
        t (float): Time in [0, 1].

    Raises:
        ValueError: If t is outside [0, 1].

    Returns:
        tuple[Density1D, Coupling]: Interpolated density and coupling."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"Fraction {t!r} is outside [0, 1]")
    coupling = monotone_coupling(nu0, nu1)
    if t == 0.0:
        return nu0, coupling
    if t == 1.0:
        return nu1, coupling
    return pushforward(coupling, t), coupling


def wasserstein2(nu0: Density1D, nu1: Density1D) -> float:
    """Returns the quadratic Wasserstein distance, exact for piecewise-constant densities.

    Args:
        nu0 (Density1D): First density.
        nu1 (Density1D): Second density.

    Returns:
        float: W₂(ν₀, ν₁)."""
    total = 0.0
    for piece in monotone_coupling(nu0, nu1).pieces:
        start = piece.target[0] - piece.source[0]
        end = piece.target[1] - piece.source[1]
        total += piece.mass * (start * start + start * end + end * end) / 3.0
    return float(np.sqrt(total))
