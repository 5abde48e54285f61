# pylint: disable=missing-module-docstring
from alexandrov_flow.model_trig.coefficients import (
    CDParams,
    ExtendedReal,
    bg_profile,
    bg_radius_cap,
    c_coeff,
    c_coeff_limit,
    sigma,
    simplicial_volume_coefficient,
    tau,
)
from alexandrov_flow.model_trig.model_trig import (
    TriangleSides,
    angle_from_sides,
    asn,
    comparison_angle,
    comparison_point_distance,
    cs,
    diameter,
    distance_concavity_modulus,
    half_square,
    lipschitz_contraction_rate,
    model_side,
    sn,
)
