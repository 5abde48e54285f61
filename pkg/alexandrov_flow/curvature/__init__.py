# pylint: disable=missing-module-docstring
from alexandrov_flow.curvature.curvature import (
    CurvatureReport,
    default_region,
    quadruple_test,
    triangle_comparison_test,
)
