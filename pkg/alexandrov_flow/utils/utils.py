"""This module contains helpers shared by all subpackages: seeded random generators,
angle arithmetic and deterministic report serialization."""

import csv
import dataclasses
import json
import logging
import math
import os
from typing import Any, Iterable, Sequence

import numpy as np

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    """Returns a counter-based Philox generator for the given seed.

    Args:
        seed (int | np.random.SeedSequence): Integer seed or an already spawned seed sequence.

    Returns:
        np.random.Generator: Seeded generator."""
    sequence = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return np.random.Generator(np.random.Philox(sequence))


def spawn_seeds(seed: int, count: int) -> list[int]:
    """Splits one run seed into independent integer seeds, one per task, through
    SeedSequence.spawn. The i-th seed only depends on the run seed and on i, so it can be
    written to a report and replayed alone.

    Args:
        seed (int): Run seed.
        count (int): Number of seeds.

    Returns:
        list[int]: Task seeds."""
    return [int(child.generate_state(1)[0]) for child in np.random.SeedSequence(seed).spawn(count)]


def spawn_rngs(seed: int, count: int) -> list[np.random.Generator]:
    """Splits one run seed into independent generators, one per task.

    Args:
        seed (int): Run seed.
        count (int): Number of generators.

    Returns:
        list[np.random.Generator]: Independent generators."""
    return [make_rng(task_seed) for task_seed in spawn_seeds(seed, count)]


def wrap_angle(angle: Any, period: float = TWO_PI) -> Any:
    """Reduces angles to [0, period).

    Args:
        angle (float | np.ndarray): Angle(s) to reduce.
        period (float, optional): Length of the circle. Defaults to 2π.

    Returns:
        float | np.ndarray: Reduced angle(s)."""
    wrapped = np.mod(angle, period)
    wrapped = np.where(wrapped >= period, 0.0, wrapped)
    return float(wrapped) if np.ndim(wrapped) == 0 else wrapped


def signed_angle(angle: Any) -> Any:
    """Reduces angles to (-π, π].

    Args:
        angle (float | np.ndarray): Angle(s) to reduce.

    Returns:
        float | np.ndarray: Reduced angle(s)."""
    wrapped = math.pi - np.mod(math.pi - np.asarray(angle, dtype=float), TWO_PI)
    return float(wrapped) if np.ndim(wrapped) == 0 else wrapped


def circle_gap(first: Any, second: Any, period: float) -> Any:
    """Returns the length of the shorter arc between two positions on a circle.

    Args:
        first (float | np.ndarray): First position.
        second (float | np.ndarray): Second position.
        period (float): Length of the circle.

    Returns:
        float | np.ndarray: Gap in [0, period / 2]."""
    raw = np.mod(np.asarray(second, dtype=float) - np.asarray(first, dtype=float), period)
    gap = np.minimum(raw, period - raw)
    return float(gap) if np.ndim(gap) == 0 else gap


def to_jsonable(value: Any) -> Any:
    """Converts dataclasses, numpy scalars and arrays, tuples and non-finite floats
    into plain JSON values. Infinite floats become the strings "inf" / "-inf".

    Args:
        value (Any): Value to convert.

    Returns:
        Any: JSON compatible value."""
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        if hasattr(value, "to_dict"):
            return to_jsonable(value.to_dict())
        return {field.name: to_jsonable(getattr(value, field.name)) for field in dataclasses.fields(value)}
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        number = float(value)
        if math.isnan(number):
            return "nan"
        if math.isinf(number):
            return "inf" if number > 0 else "-inf"
        return number
    return value


def dumps_report(report: Any) -> str:
    """Serializes a report deterministically: sorted keys and shortest round-trip floats.

    Args:
        report (Any): Report object, dataclass or dict.

    Returns:
        str: JSON text terminated by a newline."""
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path: str, report: Any) -> str:
    """Writes a report as UTF-8 JSON, creating parent directories.

    Args:
        path (str): Destination file.
        report (Any): Report to serialize.

    Returns:
        str: The path written."""
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(dumps_report(report))
    logger.debug("Report written to %s", path)
    return path


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Writes an RFC-4180 CSV file (CRLF line endings, minimal quoting).

    Args:
        path (str): Destination file.
        header (Sequence[str]): Column names.
        rows (Iterable[Sequence[Any]]): Data rows.

    Returns:
        str: The path written."""
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as file:
        writer = csv.writer(file, lineterminator="\r\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(cell)) if isinstance(cell, (float, np.floating)) else cell for cell in row])
    logger.debug("CSV written to %s", path)
    return path
