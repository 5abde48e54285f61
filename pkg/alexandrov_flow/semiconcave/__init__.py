# pylint: disable=missing-module-docstring
from alexandrov_flow.semiconcave.calculus import (
    ConcavityReport,
    GradientResult,
    Region,
    RegularityReport,
    check_regularity,
    cone_distance,
    differential,
    differentials,
    gradient,
    verify_concavity,
)
from alexandrov_flow.semiconcave.field import (
    AffineField,
    CombinedField,
    DistanceFromSet,
    DistanceFromSphere,
    ScalarField,
    field_from_dict,
    negated,
)
