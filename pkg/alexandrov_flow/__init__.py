# pylint: disable=missing-module-docstring
from alexandrov_flow.flow.certificate import FlowHomotopy, build_sllc_certificate
from alexandrov_flow.flow.params import FlowParams
from alexandrov_flow.model_trig.coefficients import CDParams
from alexandrov_flow.spaces.point import SpacePoint, TangentVector
from alexandrov_flow.spaces.space import Space
