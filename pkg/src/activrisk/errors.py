"""Exception types shared across the pipeline.

Everything user-facing derives from ActivriskError so the CLI can map
bad input to exit code 2 and keep genuine bugs (anything else) at 3.
"""

from __future__ import annotations


class ActivriskError(Exception):
    """Base class for all expected failure modes."""


class EmptyScale(ActivriskError):
    """A scale aggregation received no answers."""


class InvalidAnswer(ActivriskError):
    """A raw answer or score is outside its allowed range."""


class EmptyDataset(ActivriskError):
    """An operation that needs at least one record received none."""


class UnknownCategory(ActivriskError):
    """A value cannot be encoded because the schema never observed it."""

    def __init__(self, variable: str, value: str):
        self.variable = variable
        self.value = value
        super().__init__(f"variable {variable!r} has no node for value {value!r}")


class InvalidTopology(ActivriskError):
    """Layer sizes do not describe a usable network."""


class DimensionMismatch(ActivriskError):
    """Vector or matrix shapes disagree."""


class TooFewExamples(ActivriskError):
    """More folds requested than there are examples."""


class MissingLabel(ActivriskError):
    """A record that must be labeled is not."""


class EmptyEvaluation(ActivriskError):
    """Confusion counts sum to zero."""


class ModelFormatError(ActivriskError):
    """A model file is malformed or has an unsupported version."""


class MissingColumn(ActivriskError):
    """An input CSV lacks a required column."""

    def __init__(self, column: str):
        self.column = column
        super().__init__(f"input is missing required column {column!r}")


class MalformedRow(ActivriskError):
    """An input CSV row cannot be parsed; carries the 1-based line number."""

    def __init__(self, line: int, reason: str):
        self.line = line
        super().__init__(f"line {line}: {reason}")
