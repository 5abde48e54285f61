"""This module contains the Entry class and the most common entry types used to validate
experiment configuration files."""

import math
from typing import Any


class Entry:
    """This is a base class for all configuration entries. An entry is addressed by a dotted
    title inside the configuration, e.g. "params.eps".

    Args:
        title (str): Dotted path of the entry in the configuration.
        incorrect (str): Message to report when the value is invalid.
        description (str, optional): Description of the entry. Defaults to None.
        optional (bool, optional): If True, the entry may be missing. Defaults to False.
        options (list[Any], optional): Allowed values. Defaults to None.

    Public Methods:
        validate_value: Checks if a present value is correct.
        get_value: Returns the value from a configuration, or None when missing.
        diagnose: Returns the diagnostics of the entry for a configuration.

    Examples:
        ```python
        from alexandrov_flow.cli.entry import PositiveNumberEntry

        eps_entry = PositiveNumberEntry("params.eps", "must be a positive number", optional=True)
        eps_entry.diagnose({"params": {"eps": 0}})  # ["params.eps: must be a positive number (got 0)"]
        ```
    """

    _base_type: type | None = None

    # pylint: disable=R0913
    def __init__(
        self,
        title: str,
        incorrect: str,
        description: str | None = None,
        optional: bool = False,
        options: list[Any] | None = None,
    ):
        self._title = title
        self._incorrect = incorrect
        self._description = description
        self._optional = optional
        self._options = options

    def validate_value(self, value: Any) -> bool:
        """Checks if the value is correct. Must be implemented in the child class.

        Args:
            value (Any): Value found in the configuration.

        Returns:
            bool: True if the value is correct, False otherwise"""
        raise NotImplementedError

    def get_value(self, config: dict[str, Any]) -> Any:
        """Returns the value addressed by the title, or None when it is missing.

        Args:
            config (dict[str, Any]): Configuration.

        Returns:
            Any: Value or None."""
        node: Any = config
        for key in self._title.split("."):
            if not isinstance(node, dict) or key not in node:
                return None
            node = node[key]
        return node

    def diagnose(self, config: dict[str, Any]) -> list[str]:
        """Returns the diagnostics of the entry for a configuration.

        Args:
            config (dict[str, Any]): Configuration.

        Returns:
            list[str]: Empty if the entry is fine."""
        value = self.get_value(config)
        if value is None:
            return [] if self._optional else [f"{self._title}: missing required field"]
        if not self.validate_value(value):
            return [f"{self._title}: {self._incorrect} (got {value!r})"]
        return []

    @property
    def title(self) -> str:
        """Dotted path of the value inside the configuration, e.g. "params.eps".

        Returns:
            str: The path, also used as the prefix of every diagnostic."""
        return self._title

    @property
    def incorrect(self) -> str:
        """Diagnostic text reported after the title when the value is rejected.

        Returns:
            str: Text such as "must be a positive number"."""
        return self._incorrect

    @property
    def base_type(self) -> type | None:
        """Python type of an accepted value, None for entries of mixed type.

        Returns:
            type | None: float, int, list or dict."""
        return self._base_type

    @property
    def description(self) -> str | None:
        """Free-text note on the meaning of the value.

        Returns:
            str | None: The note, None when not given."""
        return self._description

    @property
    def optional(self) -> bool:
        """Whether the configuration may omit the value.

        Returns:
            bool: True when a missing value produces no diagnostic."""
        return self._optional

    @property
    def options(self) -> list[Any] | None:
        """Closed set of accepted values, for entries like the schema version.

        Returns:
            list[Any] | None: A copy of the set, None for open-ended entries."""
        if self._options:
            return self._options.copy()
        return None


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


class NumberEntry(Entry):
    """Class to represent a finite number.

    Example:
        ```python
        from alexandrov_flow.cli.entry import NumberEntry

        kappa_entry = NumberEntry("params.kappa", "must be a number")
        ```
    """

    _base_type = float

    def validate_value(self, value: Any) -> bool:
        """Checks if the value is a finite number.

        Args:
            value (Any): Value of the entry

        Returns:
            bool: True if the value is a finite number, False otherwise"""
        return _is_number(value)


class PositiveNumberEntry(NumberEntry):
    """Class to represent a positive number, such as a tolerance or a radius."""

    def validate_value(self, value: Any) -> bool:
        """Checks if the value is a positive number.

        Args:
            value (Any): Value of the entry

        Returns:
            bool: True if the value is a positive number, False otherwise"""
        return _is_number(value) and value > 0


class IntervalEntry(NumberEntry):
    """Class to represent a number in the open interval (low, high).

    Args:
        title (str): Dotted path of the entry.
        incorrect (str): Message for an invalid value.
        low (float): Lower end, excluded.
        high (float): Upper end, excluded.
        optional (bool, optional): If True, the entry may be missing. Defaults to False.

    Example:
        ```python
        from alexandrov_flow.cli.entry import IntervalEntry

        delta_entry = IntervalEntry("params.delta0", "must lie in (0, 1)", 0.0, 1.0, optional=True)
        ```
    """

    # pylint: disable=R0913
    def __init__(self, title: str, incorrect: str, low: float, high: float, optional: bool = False):
        super().__init__(title, incorrect, optional=optional)
        self._low = low
        self._high = high

    def validate_value(self, value: Any) -> bool:
        """Checks if the value lies strictly between the ends.

        Args:
            value (Any): Value of the entry

        Returns:
            bool: True if the value lies in the interval, False otherwise"""
        return _is_number(value) and self._low < value < self._high


class CountEntry(Entry):
    """Class to represent a nonnegative integer, such as a seed or a sample count.

    Example:
        ```python
        from alexandrov_flow.cli.entry import CountEntry

        seed_entry = CountEntry("seed", "must be a nonnegative integer")
        ```
    """

    _base_type = int

    def validate_value(self, value: Any) -> bool:
        """Checks if the value is a nonnegative integer.

        Args:
            value (Any): Value of the entry

        Returns:
            bool: True if the value is a nonnegative integer, False otherwise"""
        return isinstance(value, int) and not isinstance(value, bool) and value >= 0


class NumberListEntry(Entry):
    """Class to represent a nonempty list of finite numbers, optionally increasing."""

    _base_type = list

    # pylint: disable=R0913
    def __init__(
        self,
        title: str,
        incorrect: str,
        optional: bool = False,
        increasing: bool = False,
        positive: bool = False,
    ):
        super().__init__(title, incorrect, optional=optional)
        self._increasing = increasing
        self._positive = positive

    def validate_value(self, value: Any) -> bool:
        """Checks if the value is a nonempty list of numbers with the requested order and sign.

        Args:
            value (Any): Value of the entry

        Returns:
            bool: True if the list is correct, False otherwise"""
        if not isinstance(value, list) or not value or not all(_is_number(item) for item in value):
            return False
        if self._positive and any(item <= 0 for item in value):
            return False
        return not self._increasing or all(b > a for a, b in zip(value, value[1:]))


class OneOfEntry(Entry):
    """Class to represent a value from a fixed list of options.

    Example:
        ```python
        from alexandrov_flow.cli.entry import OneOfEntry

        mode_entry = OneOfEntry("params.map", "unknown map", options=["identity", "constant"])
        ```
    """

    def validate_value(self, value: Any) -> bool:
        """Checks if the value is one of the options.

        Args:
            value (Any): Value of the entry

        Returns:
            bool: True if the value is one of the options, False otherwise"""
        if not self.options:
            raise ValueError("Options not provided")
        return value in self.options


class MappingEntry(Entry):
    """Class to represent a nested block of the configuration."""

    _base_type = dict

    def validate_value(self, value: Any) -> bool:
        """Checks if the value is a mapping.

        Args:
            value (Any): Value of the entry

        Returns:
            bool: True if the value is a mapping, False otherwise"""
        return isinstance(value, dict)


class MatrixEntry(Entry):
    """Class to represent a nonempty list of matrix rows. Every row is a mapping with a
    "space" descriptor, an optional numeric "kappa" and an optional "expect" verdict."""

    _base_type = list
    _expectations = ("pass", "fail")

    def validate_value(self, value: Any) -> bool:
        """Checks the shape of every row; the space descriptors are checked by the experiment.

        Args:
            value (Any): Value of the entry

        Returns:
            bool: True if every row is well formed, False otherwise"""
        if not isinstance(value, list) or not value:
            return False
        for row in value:
            if not isinstance(row, dict) or not isinstance(row.get("space"), dict):
                return False
            if "kappa" in row and not _is_number(row["kappa"]):
                return False
            if row.get("expect", "pass") not in self._expectations:
                return False
        return True
