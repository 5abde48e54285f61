# pylint: disable=missing-module-docstring
from alexandrov_flow.plateau.energy import (
    EnergyReport,
    LambdaMeasure,
    approx_energy_density,
    averaged_energy,
    energy_certificate,
    energy_ladder,
)
from alexandrov_flow.plateau.fill import FillReport, fill_loop
from alexandrov_flow.plateau.maps import DiskMap, LoopMap
