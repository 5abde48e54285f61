# pylint: disable=missing-module-docstring
from alexandrov_flow.cli.cli import load_config, main, output_dir, run, validate
from alexandrov_flow.cli.entry import (
    CountEntry,
    Entry,
    IntervalEntry,
    MappingEntry,
    MatrixEntry,
    NumberEntry,
    NumberListEntry,
    OneOfEntry,
    PositiveNumberEntry,
)
from alexandrov_flow.cli.experiment import Experiment, ExperimentGroup, ExperimentResult
