import json
import math
from dataclasses import dataclass

import numpy as np
import pytest

from alexandrov_flow.utils.utils import (
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


@dataclass
class Sample:
    name: str
    values: tuple


def test_wrap_angle():
    assert wrap_angle(-0.5) == pytest.approx(2 * math.pi - 0.5)
    assert wrap_angle(2 * math.pi) == 0.0
    assert wrap_angle(5.0, period=3.0) == pytest.approx(2.0)
    wrapped = wrap_angle(np.array([-1.0, 0.0, 7.0]))
    assert isinstance(wrapped, np.ndarray)
    assert wrapped == pytest.approx([2 * math.pi - 1.0, 0.0, 7.0 - 2 * math.pi])


def test_signed_angle():
    assert signed_angle(1.5 * math.pi) == pytest.approx(-0.5 * math.pi)
    assert signed_angle(math.pi) == pytest.approx(math.pi)
    assert signed_angle(-math.pi) == pytest.approx(math.pi)
    assert signed_angle(np.array([0.25, -0.25])) == pytest.approx([0.25, -0.25])


def test_circle_gap():
    assert circle_gap(0.1, 6.2, 2 * math.pi) == pytest.approx(0.1 + 2 * math.pi - 6.2)
    assert circle_gap(0.0, 2.0, 3.0) == pytest.approx(1.0)
    assert circle_gap(np.array([0.0, 1.0]), 1.0, 4.0) == pytest.approx([1.0, 0.0])


def test_to_jsonable():
    value = {
        "float": np.float64(1.5),
        "int": np.int64(3),
        "flag": np.bool_(True),
        "array": np.array([1.0, 2.0]),
        "tuple": (1, 2),
        "inf": math.inf,
        "minus_inf": -math.inf,
        "nan": math.nan,
        "sample": Sample("a", (0.5,)),
        1: "key",
    }
    assert to_jsonable(value) == {
        "float": 1.5,
        "int": 3,
        "flag": True,
        "array": [1.0, 2.0],
        "tuple": [1, 2],
        "inf": "inf",
        "minus_inf": "-inf",
        "nan": "nan",
        "sample": {"name": "a", "values": [0.5]},
        "1": "key",
    }


def test_dumps_report_sorts_keys():
    text = dumps_report({"b": 1, "a": 0.1})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": 0.1, "b": 1}


def test_write_json(tmp_path):
    path = write_json(str(tmp_path / "nested" / "report.json"), {"value": math.inf})
    with open(path, encoding="utf-8") as file:
        assert json.load(file) == {"value": "inf"}


def test_write_csv(tmp_path):
    path = write_csv(str(tmp_path / "table.csv"), ["name", "value"], [["a,b", 0.1], ["c", np.float64(2.0)]])
    with open(path, encoding="utf-8", newline="") as file:
        text = file.read()
    assert text == 'name,value\r\n"a,b",0.1\r\nc,2.0\r\n'


def test_make_rng_is_deterministic():
    assert make_rng(5).random(3) == pytest.approx(make_rng(5).random(3))
    assert not np.allclose(make_rng(5).random(3), make_rng(6).random(3))


def test_spawn_rngs():
    first = [rng.random() for rng in spawn_rngs(1, 3)]
    second = [rng.random() for rng in spawn_rngs(1, 3)]
    assert first == second
    assert len(set(first)) == 3


def test_spawn_seeds():
    seeds = spawn_seeds(1, 4)
    assert seeds == spawn_seeds(1, 4)
    assert len(set(seeds)) == 4
    assert all(isinstance(seed, int) for seed in seeds)
    # a task seed depends on its index only, not on the number of tasks
    assert spawn_seeds(1, 2) == seeds[:2]
    assert spawn_seeds(2, 4) != seeds
    assert [rng.random() for rng in spawn_rngs(1, 2)] == [make_rng(seed).random() for seed in seeds[:2]]
