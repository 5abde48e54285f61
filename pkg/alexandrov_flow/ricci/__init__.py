# pylint: disable=missing-module-docstring
from alexandrov_flow.ricci.density import (
    Coupling,
    Density1D,
    TransportPiece,
    displacement_geodesic,
    monotone_coupling,
    pushforward,
    random_density,
    wasserstein2,
)
from alexandrov_flow.ricci.ricci import (
    BgReport,
    BoundTable,
    CDStarReport,
    averaging_cutoff,
    bg_check,
    cd_star_check,
    renyi_entropy,
    simplicial_volume_pipeline,
)
