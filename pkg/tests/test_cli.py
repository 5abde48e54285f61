import json
import logging
import math
import os

import pytest

from alexandrov_flow.cli import (
    CountEntry,
    ExperimentGroup,
    IntervalEntry,
    MappingEntry,
    MatrixEntry,
    NumberListEntry,
    OneOfEntry,
    load_config,
    main,
    output_dir,
    run,
    validate,
)
from alexandrov_flow.cli.cli import OUTPUT_ENV
from alexandrov_flow.cli.experiment import BoundExperiment
from alexandrov_flow.utils.errors import ConfigError

CONE = {"kind": "euclidean_cone", "theta_total": 1.5 * math.pi}
WIDE = {"kind": "euclidean_cone", "theta_total": 2.5 * math.pi}
BOUND = {"schema_version": 1, "experiment": "bound", "params": {"K": -1.0, "N": 2.0}}


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    monkeypatch.delenv(OUTPUT_ENV, raising=False)
    monkeypatch.chdir(tmp_path)


def write_config(directory, config):
    path = directory / "config.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    return str(path)


def test_commands():
    assert ExperimentGroup.commands() == [
        "sllc",
        "contraction",
        "concavity",
        "curvature",
        "bg",
        "cd1d",
        "energy",
        "fill",
        "bound",
    ]
    assert ExperimentGroup.find("bound") is BoundExperiment
    assert ExperimentGroup.find("nope") is None
    assert ExperimentGroup.experiment("nope", {}) is None


def test_validate_reports_missing_seed():
    config = {"schema_version": 1, "experiment": "sllc", "space": CONE}
    assert validate(config) == ["seed: missing required field"]
    assert validate({**config, "seed": 3}) == []


def test_validate_collects_every_problem():
    config = {"schema_version": 2, "experiment": "sllc", "seed": -1, "space": CONE, "params": {"eps": 0}}
    diagnostics = validate(config)
    assert len(diagnostics) == 3
    assert any(message.startswith("schema_version") for message in diagnostics)
    assert any(message.startswith("seed") for message in diagnostics)
    assert any(message.startswith("params.eps") for message in diagnostics)


def test_validate_unknown_experiment_and_space():
    assert validate({"schema_version": 1, "experiment": "nope"}) == ["experiment: unknown experiment (got 'nope')"]
    diagnostics = validate({"schema_version": 1, "experiment": "bg", "space": {"kind": "torus"}, "params": {"K": 0, "N": 2}})
    assert diagnostics
    diagnostics = validate({"schema_version": 1, "experiment": "bound", "params": {"K": 0.0, "N": 0.5}})
    assert any(message.startswith("params") for message in diagnostics)


def test_load_config(tmp_path):
    assert load_config(write_config(tmp_path, BOUND)) == BOUND
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.json"))
    (tmp_path / "list.json").write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "list.json"))


def test_output_dir(monkeypatch):
    config = {"output": {"dir": "from-config"}}
    assert output_dir({}) == "out"
    assert output_dir(config) == "from-config"
    monkeypatch.setenv(OUTPUT_ENV, "from-env")
    assert output_dir(config) == "from-env"
    assert output_dir(config, "from-flag") == "from-flag"


def test_bound_run_writes_report_and_table(tmp_path):
    out = tmp_path / "out"
    assert run(dict(BOUND), str(out)) == 0
    report = json.loads((out / "bound.json").read_text(encoding="utf-8"))
    assert report["passed"] is True
    assert report["experiment"] == "bound"
    assert report["report"]["limit"] == pytest.approx(2.0)
    with open(out / "bound_bound.csv", encoding="utf-8", newline="") as file:
        lines = file.read().split("\r\n")
    assert lines[0] == "R,eps,C,bound"
    assert len([line for line in lines if line]) == 5


def test_reports_are_deterministic(tmp_path):
    assert run(dict(BOUND), str(tmp_path / "first")) == 0
    assert run(dict(BOUND), str(tmp_path / "second")) == 0
    first = (tmp_path / "first" / "bound.json").read_bytes()
    second = (tmp_path / "second" / "bound.json").read_bytes()
    assert first == second


def test_bg_run_on_narrow_cone(tmp_path):
    config = {"schema_version": 1, "experiment": "bg", "space": CONE, "params": {"K": 0.0, "N": 2.0}}
    assert run(config, str(tmp_path)) == 0
    with open(tmp_path / "bg_bg.csv", encoding="utf-8", newline="") as file:
        rows = [line for line in file.read().split("\r\n") if line]
    assert rows[0] == "center,r,volume,ratio"
    assert len(rows) == 31


def curvature_config(matrix=None, samples=400, seed=7):
    params = {"samples": samples}
    if matrix is not None:
        params["matrix"] = matrix
    return {"schema_version": 1, "experiment": "curvature", "seed": seed, "params": params}


def test_failed_check_still_writes_report(tmp_path):
    assert run(curvature_config([{"space": WIDE, "kappa": 0.0}]), str(tmp_path)) == 1
    report = json.loads((tmp_path / "curvature.json").read_text(encoding="utf-8"))
    assert report["passed"] is False
    rows = report["report"]["matrix"]
    assert [row["matches"] for row in rows] == [False, False]
    assert all(row["witness"] for row in rows)
    assert os.path.exists(tmp_path / "curvature_verdicts.csv")


def test_expected_failure_passes_the_run(tmp_path):
    matrix = [{"space": CONE, "kappa": 0.0}, {"space": WIDE, "kappa": 0.0, "expect": "fail"}]
    assert run(curvature_config(matrix), str(tmp_path)) == 0
    rows = json.loads((tmp_path / "curvature.json").read_text(encoding="utf-8"))["report"]["matrix"]
    assert [row["passed"] for row in rows] == [True, True, False, False]
    assert all(row["matches"] for row in rows)
    assert rows[2]["worst_margin"] < -1e-3


def test_default_curvature_matrix_includes_a_violation(tmp_path):
    assert run(curvature_config(), str(tmp_path)) == 0
    rows = json.loads((tmp_path / "curvature.json").read_text(encoding="utf-8"))["report"]["matrix"]
    assert len(rows) == 14
    failing = [row for row in rows if row["expect"] == "fail"]
    assert len(failing) == 2
    assert all(row["space"]["theta_total"] == pytest.approx(WIDE["theta_total"]) for row in failing)
    assert all(not row["passed"] and row["witness"] for row in failing)
    assert len({row["seed"] for row in rows}) == 14
    with open(tmp_path / "curvature_verdicts.csv", encoding="utf-8", newline="") as file:
        header = file.read().split("\r\n")[0]
    assert header == "space,kind_value,kappa,test,seed,tested,skipped,worst_margin,passed,expect,matches"


@pytest.mark.parametrize(
    "matrix",
    [
        [{"kappa": 0.0}],
        {"space": CONE},
        [],
        [{"space": CONE, "kappa": "zero"}],
        [{"space": CONE, "expect": "maybe"}],
    ],
)
def test_malformed_curvature_matrix(tmp_path, matrix):
    config = curvature_config(matrix)
    diagnostics = validate(config)
    assert len(diagnostics) == 1
    assert diagnostics[0].startswith("params.matrix: ")
    assert run(config, str(tmp_path / "out")) == 2
    assert not (tmp_path / "out").exists()


def test_unknown_space_in_curvature_matrix(tmp_path):
    config = curvature_config([{"space": {"kind": "torus"}}])
    assert validate(config) == ["params.matrix[0].space.kind: unknown kind 'torus'"]
    assert run(config, str(tmp_path)) == 2


@pytest.mark.parametrize(
    "config",
    [
        {"schema_version": 1, "experiment": "sllc", "seed": 4, "space": CONE, "params": {"samples": 10}},
        {"schema_version": 1, "experiment": "curvature", "seed": 4, "params": {"samples": 50}},
        {"schema_version": 1, "experiment": "cd1d", "seed": 4, "params": {"K": 0.0, "N": 2.0, "pairs": 3}},
    ],
    ids=["sllc", "curvature", "cd1d"],
)
def test_seeded_reports_are_byte_identical(tmp_path, config):
    command = config["experiment"]
    first_code = run(dict(config), str(tmp_path / "first"))
    assert run(dict(config), str(tmp_path / "second")) == first_code
    for name in os.listdir(tmp_path / "first"):
        assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()
    assert (tmp_path / "first" / f"{command}.json").exists()


def test_other_seed_changes_the_report(tmp_path):
    config = {"schema_version": 1, "experiment": "cd1d", "seed": 4, "params": {"K": 0.0, "N": 2.0, "pairs": 2}}
    run(config, str(tmp_path / "first"))
    run({**config, "seed": 5}, str(tmp_path / "second"))
    first = (tmp_path / "first" / "cd1d.json").read_bytes()
    assert first != (tmp_path / "second" / "cd1d.json").read_bytes()


def test_error_while_running_is_not_reported_as_invalid_configuration(tmp_path, caplog):
    # the radius passes validation but exceeds δ₀R of the flow parameters
    config = {"schema_version": 1, "experiment": "sllc", "seed": 0, "space": CONE, "params": {"r": 1.0}}
    assert validate(config) == []
    with caplog.at_level(logging.ERROR):
        assert run(config, str(tmp_path / "out")) == 2
    assert "Experiment sllc stopped while running: ValueError" in caplog.text
    assert "Invalid configuration" not in caplog.text
    assert not (tmp_path / "out").exists()


def test_cd1d_run_with_explicit_densities(tmp_path):
    pair = [{"grid": [0.0, 0.1], "values": [1.0]}, {"grid": [2.0, 2.1], "values": [1.0]}]
    config = {
        "schema_version": 1,
        "experiment": "cd1d",
        "seed": 0,
        "params": {"K": 1.0, "N": 2.0, "densities": [pair], "t_grid": [0.5]},
    }
    assert run(config, str(tmp_path)) == 1
    report = json.loads((tmp_path / "cd1d.json").read_text(encoding="utf-8"))
    assert report["report"]["min_margin"] < 0.0


def test_config_error_exit_code(tmp_path):
    assert run({"schema_version": 1, "experiment": "nope"}, str(tmp_path)) == 2
    assert not os.listdir(tmp_path)


def test_main_runs_with_flags(tmp_path):
    path = write_config(tmp_path, {"params": {"K": -1.0, "N": 2.0}})
    out = tmp_path / "flagged"
    assert main(["bound", "--config", path, "--out", str(out), "--seed", "3"]) == 0
    report = json.loads((out / "bound.json").read_text(encoding="utf-8"))
    assert report["seed"] == 3
    assert report["config"]["schema_version"] == 1


def test_main_reads_output_from_environment(tmp_path, monkeypatch):
    path = write_config(tmp_path, BOUND)
    monkeypatch.setenv(OUTPUT_ENV, str(tmp_path / "env-out"))
    assert main(["bound", "--config", path]) == 0
    assert (tmp_path / "env-out" / "bound.json").exists()


def test_main_validate(tmp_path, capsys):
    path = write_config(tmp_path, {"experiment": "sllc", "space": CONE})
    assert main(["validate", "--config", path]) == 2
    assert "seed: missing required field" in capsys.readouterr().err
    assert main(["validate", "--config", path, "--seed", "1"]) == 0


def test_main_config_errors(tmp_path):
    assert main(["bound", "--config", str(tmp_path / "missing.json")]) == 2
    path = write_config(tmp_path, BOUND)
    assert main(["bound", "--config", path, "--tol", "-1"]) == 2
    with pytest.raises(SystemExit):
        main(["nope"])


def test_entries():
    entry = IntervalEntry("params.eps", "must lie in (0, 1)", 0.0, 1.0, optional=True)
    assert entry.title == "params.eps"
    assert entry.optional
    assert entry.base_type is float
    assert entry.diagnose({}) == []
    assert entry.diagnose({"params": {"eps": 0.5}}) == []
    assert entry.diagnose({"params": {"eps": True}}) == ["params.eps: must lie in (0, 1) (got True)"]
    assert CountEntry("seed", "must be a nonnegative integer").diagnose({}) == ["seed: missing required field"]
    radii = NumberListEntry("radii", "must increase", increasing=True, positive=True)
    assert radii.validate_value([0.1, 0.2])
    assert not radii.validate_value([0.2, 0.1])
    assert not radii.validate_value([])
    choice = OneOfEntry("map", "unknown map", description="disk map", options=["radial", "constant"])
    assert choice.options == ["radial", "constant"]
    assert choice.description == "disk map"
    assert choice.incorrect == "unknown map"
    assert not MappingEntry("space", "must be a mapping").validate_value([1])


def test_matrix_entry():
    entry = MatrixEntry("params.matrix", "must be matrix rows", optional=True)
    assert entry.base_type is list
    assert entry.validate_value([{"space": CONE}, {"space": WIDE, "kappa": 0, "expect": "fail"}])
    assert not entry.validate_value([{"space": CONE, "kappa": True}])
    assert not entry.validate_value([{"space": "cone"}])
    assert not entry.validate_value("rows")
    assert entry.diagnose({"params": {}}) == []
