# pylint: disable=missing-module-docstring
from alexandrov_flow.utils.errors import (
    AlexandrovFlowError,
    CertificateError,
    ConfigError,
    DegenerateError,
    DomainError,
    GeodesicDomainError,
    GradientCheckError,
    InadmissibleMeasureError,
    LoopEscapesBallError,
    MarginError,
    NonUniqueGeodesicError,
    RegionError,
    SpaceMismatchError,
)
from alexandrov_flow.utils.utils import (
    TWO_PI,
    circle_gap,
    dumps_report,
    make_rng,
    signed_angle,
    spawn_rngs,
    spawn_seeds,
    to_jsonable,
    wrap_angle,
    write_csv,
    write_json,
)
