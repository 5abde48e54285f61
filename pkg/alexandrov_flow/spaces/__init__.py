# pylint: disable=missing-module-docstring
from alexandrov_flow.spaces.point import SpacePoint, TangentVector
from alexandrov_flow.spaces.space import (
    Space,
    ball_volume,
    direction_angle,
    directions_circle_length,
    distance,
    exp,
    geodesic_point,
    log_direction,
)
