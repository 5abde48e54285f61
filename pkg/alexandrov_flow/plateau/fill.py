"""This module contains the filling of a loop by a Lipschitz disk: the inner half-disk is
sent to the center p and the annulus 1/2 <= s <= 1 follows the flow homotopy from the loop
to p, so the boundary ring reproduces the loop exactly."""

import logging
from dataclasses import dataclass
from typing import Any

from alexandrov_flow.flow import FlowHomotopy, FlowParams, SllcCertificate, default_field
from alexandrov_flow.plateau.maps import DiskMap, LoopMap
from alexandrov_flow.spaces import SpacePoint
from alexandrov_flow.utils.errors import CertificateError, LoopEscapesBallError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FillReport:
    """A filling g̃ of a loop γ and its Lipschitz estimate.

    Args:
        disk_map (DiskMap): The filling.
        lipschitz (float): Discrete Lipschitz constant of g̃.
        loop_lipschitz (float): Discrete Lipschitz constant of γ.
        bound (float): 2(C + C')·max(1, Lip γ).
        boundary_error (float): Largest distance between the boundary ring and γ.
        tol (float): Absolute tolerance on the Lipschitz bound.
    """

    disk_map: DiskMap
    lipschitz: float
    loop_lipschitz: float
    bound: float
    boundary_error: float
    tol: float

    @property
    def passed(self) -> bool:
        """Returns True if the boundary is exact and the Lipschitz bound holds.

        Returns:
            bool: Verdict."""
        return self.boundary_error == 0.0 and self.lipschitz <= self.bound + self.tol

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation without the node values.

        Returns:
            dict[str, Any]: Report fields and the verdict."""
        return {
            "n_r": self.disk_map.n_r,
            "n_phi": self.disk_map.n_phi,
            "lipschitz": self.lipschitz,
            "loop_lipschitz": self.loop_lipschitz,
            "bound": self.bound,
            "boundary_error": self.boundary_error,
            "tol": self.tol,
            "passed": self.passed,
        }


# pylint: disable=R0913
def fill_loop(
    gamma: LoopMap,
    p: SpacePoint,
    params: FlowParams,
    n_r: int = 16,
    certificate: SllcCertificate | None = None,
    tol: float = 1e-6,
) -> FillReport:
    """Fills γ by g̃(s, ψ) = p for s <= 1/2 and g̃(s, ψ_j) = h(γ_j, 2(1 - s)) for s >= 1/2,
    where h(x, u) = Φ(x, ℓu) is the flow homotopy contracting B(p, δ₀R) to p.

    Args:
        gamma (LoopMap): The loop; its samples become the boundary ring.
        p (SpacePoint): Center of the contracted ball.
        params (FlowParams): Flow parameters.
        n_r (int, optional): Number of rings, even. Defaults to 16.
        certificate (SllcCertificate, optional): Certificate of the ball. Defaults to None.
        tol (float, optional): Absolute tolerance on the Lipschitz bound. Defaults to 1e-6.

    Raises:
        ValueError: If n_r is odd.
        CertificateError: If a failed certificate is given.
        LoopEscapesBallError: If a loop sample lies outside B(p, δ₀R).

    Returns:
        FillReport: The filling and its Lipschitz estimate.

    Example:
        ```python
        import math

        from alexandrov_flow.flow import FlowParams
        from alexandrov_flow.plateau import LoopMap, fill_loop
        from alexandrov_flow.spaces import Space

        cone = Space.euclidean_cone(3 * math.pi / 2)
        params = FlowParams.default()
        loop = LoopMap.circle(cone, cone.apex, 0.03)
        report = fill_loop(loop, cone.apex, params)
        ```
    """
    if n_r < 2 or n_r % 2:
        raise ValueError(f"The number of rings must be even, got {n_r!r}")
    if certificate is not None and not certificate.passed:
        raise CertificateError("The ball around p is not certified", certificate.witness)
    space = gamma.space
    radius = params.delta0 * params.R
    for j, point in enumerate(gamma.points):
        if space.distance(point, p) > radius * (1.0 + 1e-12):
            raise LoopEscapesBallError(f"Loop sample {j} at {point} leaves B(p, {radius!r})")

    homotopy = FlowHomotopy(default_field(space, p, params), params)
    half = n_r // 2
    rings = [[p] * gamma.n for _ in range(half + 1)]
    for i in range(half + 1, n_r + 1):
        u = 2.0 * (1.0 - i / n_r)
        rings.append([homotopy(point, u) for point in gamma.points])
    disk_map = DiskMap(space, rings)

    boundary_error = max(space.distance(a, b) for a, b in zip(disk_map.boundary(), gamma.points))
    loop_lipschitz = gamma.lipschitz()
    bound = 2.0 * (params.contraction_constant + params.ell) * max(1.0, loop_lipschitz)
    report = FillReport(disk_map, disk_map.lipschitz(), loop_lipschitz, bound, boundary_error, tol)
    logger.info("Filled loop of length %.6f: Lip %.6f, bound %.6f", gamma.length, report.lipschitz, bound)
    return report
