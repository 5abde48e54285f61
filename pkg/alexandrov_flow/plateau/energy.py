"""This module contains the approximate energy of disk maps: the ε-energy density averaged
over small circles, its average over a measure on the scale factors, and the energy
certificate E <= 2π·Lip² for Lipschitz maps."""

import logging
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from alexandrov_flow.plateau.maps import DiskMap
from alexandrov_flow.utils.errors import InadmissibleMeasureError, MarginError

logger = logging.getLogger(__name__)

DIRECTIONS = 64
RADIAL_CELLS = 16
ANGULAR_CELLS = 32


class LambdaMeasure:
    """A probability measure ν on the scale factors λ ∈ (0, 2] with ∫λ⁻² dν < ∞,
    stored as quadrature nodes and weights.

    Args:
        nodes (Sequence[float]): Scale factors.
        weights (Sequence[float]): Nonnegative weights summing to 1.
        description (dict[str, Any], optional): JSON description. Defaults to atoms.

    Raises:
        InadmissibleMeasureError: If a node is outside (0, 2] or the weights are not a
            probability vector.
    """

    def __init__(self, nodes: Sequence[float], weights: Sequence[float], description: dict[str, Any] | None = None):
        nodes_array = np.asarray(nodes, dtype=float)
        weights_array = np.asarray(weights, dtype=float)
        if nodes_array.ndim != 1 or len(nodes_array) == 0 or nodes_array.shape != weights_array.shape:
            raise InadmissibleMeasureError("ν needs as many weights as nodes, at least one")
        if np.any(nodes_array <= 0) or np.any(nodes_array > 2):
            raise InadmissibleMeasureError("ν must be supported in (0, 2]")
        if np.any(weights_array < 0) or abs(float(weights_array.sum()) - 1.0) > 1e-12:
            raise InadmissibleMeasureError("ν must be a probability measure")
        self._nodes = nodes_array
        self._weights = weights_array
        self._description = description or {"kind": "atoms", "nodes": nodes_array.tolist(), "weights": weights_array.tolist()}

    @classmethod
    def uniform(cls, a: float = 1.0, b: float = 2.0, nodes: int = 4) -> "LambdaMeasure":
        """Returns the uniform measure on [a, b] discretized by Gauss–Legendre nodes.

        Args:
            a (float, optional): Left end, positive. Defaults to 1.
            b (float, optional): Right end, at most 2. Defaults to 2.
            nodes (int, optional): Number of nodes. Defaults to 4.

        Raises:
            InadmissibleMeasureError: Unless 0 < a < b <= 2 (a = 0 makes ∫λ⁻² dν infinite).

        Returns:
            LambdaMeasure: The measure."""
        if not 0.0 < a < b <= 2.0:
            raise InadmissibleMeasureError(f"Uniform ν on [{a!r}, {b!r}] is not admissible, need 0 < a < b <= 2")
        points, weights = np.polynomial.legendre.leggauss(nodes)
        return cls(
            0.5 * (b - a) * points + 0.5 * (a + b),
            weights / weights.sum(),
            {"kind": "uniform", "a": a, "b": b, "nodes": nodes},
        )

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "LambdaMeasure":
        """Creates a measure from its JSON description.

        Args:
            data (dict[str, Any]): {"kind": "uniform", "a", "b"} or {"kind": "atoms", "nodes", "weights"}.

        Raises:
            InadmissibleMeasureError: On an unknown kind or an inadmissible measure.

        Returns:
            LambdaMeasure: The measure."""
        kind = data.get("kind", "uniform")
        if kind == "uniform":
            return cls.uniform(float(data.get("a", 1.0)), float(data.get("b", 2.0)), int(data.get("nodes", 4)))
        if kind == "atoms":
            return cls(data["nodes"], data["weights"])
        raise InadmissibleMeasureError(f"Unknown measure kind {kind!r}")

    @property
    def nodes(self) -> np.ndarray:
        """Returns the scale factors.

        Returns:
            np.ndarray: Nodes."""
        return self._nodes.copy()

    @property
    def weights(self) -> np.ndarray:
        """Returns the weights.

        Returns:
            np.ndarray: Weights."""
        return self._weights.copy()

    @property
    def max_scale(self) -> float:
        """Returns the largest scale factor.

        Returns:
            float: max λ."""
        return float(self._nodes.max())

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON description.

        Returns:
            dict[str, Any]: Description."""
        return dict(self._description)


def approx_energy_density(u: DiskMap, x: tuple[float, float], eps: float, directions: int = DIRECTIONS) -> float:
    """Returns e_ε(x) = (1/π)∫_0^{2π} d(u(x), u(x + εe^{iψ}))²/ε² dψ with the midpoint rule
    on `directions` angles. The normalization makes the identity map of the flat disk
    have density 2.

    Args:
        u (DiskMap): The map.
        x (tuple[float, float]): Cartesian point of the disk.
        eps (float): Circle radius, positive.
        directions (int, optional): Quadrature angles. Defaults to 64.

    Raises:
        MarginError: Unless |x| + ε < 1.

    Returns:
        float: Energy density."""
    if eps <= 0:
        raise ValueError(f"ε must be positive, got {eps!r}")
    if math.hypot(*x) + eps >= 1.0:
        raise MarginError(f"The circle of radius {eps!r} around {x} leaves the unit disk")
    value = u.evaluate(*x)
    angles = (np.arange(directions) + 0.5) * (2.0 * math.pi / directions)
    images = [u.evaluate(x[0] + eps * math.cos(a), x[1] + eps * math.sin(a)) for a in angles]
    rs = np.array([image.r for image in images])
    phis = np.array([image.phi for image in images])
    squares = u.space.distances(value, rs, phis) ** 2
    return float(2.0 * squares.sum() / (directions * eps * eps))


# pylint: disable=R0913
def averaged_energy(
    u: DiskMap,
    eps: float,
    nu: LambdaMeasure | None = None,
    radial: int = RADIAL_CELLS,
    angular: int = ANGULAR_CELLS,
    directions: int = DIRECTIONS,
) -> float:
    """Returns E_ε(u) = ∫_{|x| <= 1-2ε} ∫ e_{λε}(x) dν(λ) dx with the polar midpoint rule.

    Args:
        u (DiskMap): The map.
        eps (float): Scale ε with 0 < ε < 1/2.
        nu (LambdaMeasure, optional): Measure on λ. Defaults to uniform on [1, 2].
        radial (int, optional): Radial cells. Defaults to 16.
        angular (int, optional): Angular cells. Defaults to 32.
        directions (int, optional): Angles of the density quadrature. Defaults to 64.

    Raises:
        MarginError: Unless 0 < ε < 1/2.

    Returns:
        float: Approximate energy."""
    if not 0.0 < eps < 0.5:
        raise MarginError(f"ε = {eps!r} leaves no interior region, need 0 < ε < 1/2")
    nu = nu or LambdaMeasure.uniform()
    outer = 1.0 - 2.0 * eps
    ds = outer / radial
    dpsi = 2.0 * math.pi / angular
    total = 0.0
    for k in range(radial):
        s = (k + 0.5) * ds
        for m in range(angular):
            psi = (m + 0.5) * dpsi
            x = (s * math.cos(psi), s * math.sin(psi))
            density = sum(
                w * approx_energy_density(u, x, lam * eps, directions) for lam, w in zip(nu.nodes, nu.weights)
            )
            total += density * s * ds * dpsi
    logger.debug("Averaged energy at ε=%s: %.6f", eps, total)
    return float(total)


def energy_ladder(u: DiskMap, eps_values: Sequence[float], nu: LambdaMeasure | None = None) -> list[tuple[float, float]]:
    """Returns the averaged energy over a ladder of scales.

    Args:
        u (DiskMap): The map.
        eps_values (Sequence[float]): Scales ε.
        nu (LambdaMeasure, optional): Measure on λ. Defaults to uniform on [1, 2].

    Returns:
        list[tuple[float, float]]: (ε, E_ε) rows."""
    return [(float(eps), averaged_energy(u, float(eps), nu)) for eps in eps_values]


@dataclass(frozen=True)
class EnergyReport:
    """The bound E_ε(u) <= 2π·Lip(u)²·(1 + tol).

    Args:
        energy (float): Averaged energy.
        lipschitz (float): Lipschitz constant used.
        bound (float): 2π·Lip².
        tol (float): Relative tolerance.
    """

    energy: float
    lipschitz: float
    bound: float
    tol: float

    @property
    def passed(self) -> bool:
        """Returns True if the energy is within the bound.

        Returns:
            bool: Verdict."""
        return self.energy <= self.bound * (1.0 + self.tol)

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Report fields and the verdict."""
        return {
            "energy": self.energy,
            "lipschitz": self.lipschitz,
            "bound": self.bound,
            "tol": self.tol,
            "passed": self.passed,
        }


def energy_certificate(
    u: DiskMap,
    eps: float,
    nu: LambdaMeasure | None = None,
    lipschitz: float | None = None,
    tol: float = 1e-3,
    **quadrature: int,
) -> EnergyReport:
    """Compares the averaged energy with 2π·Lip². The density of a map with Lipschitz
    constant L is at most 2L², and the disk has area π.

    Args:
        u (DiskMap): The map.
        eps (float): Scale ε.
        nu (LambdaMeasure, optional): Measure on λ. Defaults to uniform on [1, 2].
        lipschitz (float, optional): Lipschitz constant. Defaults to the discrete one of u.
        tol (float, optional): Relative tolerance. Defaults to 1e-3.
        **quadrature (int): radial, angular or directions passed to averaged_energy.

    Returns:
        EnergyReport: The comparison."""
    constant = u.lipschitz() if lipschitz is None else lipschitz
    energy = averaged_energy(u, eps, nu, **quadrature)
    return EnergyReport(energy, constant, 2.0 * math.pi * constant * constant, tol)
