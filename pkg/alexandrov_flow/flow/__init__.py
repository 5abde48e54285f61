# pylint: disable=missing-module-docstring
from alexandrov_flow.flow.certificate import (
    FlowHomotopy,
    SllcCertificate,
    build_sllc_certificate,
    default_field,
)
from alexandrov_flow.flow.checks import (
    ArrivalReport,
    ContractionReport,
    HomotopyReport,
    check_arrival,
    check_contraction,
    check_homotopy_bound,
)
from alexandrov_flow.flow.curve import (
    CURVE_CSV_HEADER,
    CurveSample,
    GradientCurve,
    SemigroupStudy,
    flow_map,
    integrate,
    semigroup_study,
)
from alexandrov_flow.flow.params import FlowParams
