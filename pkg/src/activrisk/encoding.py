"""One-hot encoding of survey responses into binary input vectors.

The schema is inferred from a training dataset: two-valued variables get a
single node, five-valued variables get one node per value actually observed
in that dataset (in the type's declared order).  A value never observed at
inference time is unencodable; callers get UnknownCategory rather than a
silent all-zeros block, because an all-zeros block would violate the one-hot
layout the network was trained under.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyDataset, UnknownCategory
from .survey import CATEGORICAL_FIELDS, Gender, Major, SurveyResponse, YesNo

# Which value of each two-valued variable maps to 1 (the other maps to 0).
# The choice is a fixed convention; a sigmoid net is insensitive to it up to
# weight sign.
BINARY_POSITIVE = frozenset({Gender.MALE, YesNo.YES, Major.SPORT_RELATED})


@dataclass(frozen=True)
class VariableEncoding:
    """Node allocation for one variable."""

    name: str
    values: tuple  # canonical order; for one-hot variables only observed ones
    offset: int
    binary: bool

    @property
    def width(self) -> int:
        return 1 if self.binary else len(self.values)


@dataclass(frozen=True)
class EncodingSchema:
    """Ordered variable-to-node mapping; immutable once inferred."""

    variables: tuple[VariableEncoding, ...]
    total_nodes: int

    def variable(self, name: str) -> VariableEncoding:
        for var in self.variables:
            if var.name == name:
                return var
        raise KeyError(name)

    def decode(self, bits: np.ndarray) -> dict:
        """Invert a feature vector back to per-variable values."""
        out = {}
        for var in self.variables:
            if var.binary:
                on = bits[var.offset] == 1
                positive = [v for v in var.values if v in BINARY_POSITIVE][0]
                negative = [v for v in var.values if v not in BINARY_POSITIVE][0]
                out[var.name] = positive if on else negative
            else:
                block = bits[var.offset : var.offset + var.width]
                (hot,) = np.flatnonzero(block == 1)
                out[var.name] = var.values[int(hot)]
        return out


def infer_schema(dataset: Sequence[SurveyResponse]) -> EncodingSchema:
    """Allocate input nodes from the values present in a training dataset."""
    if not dataset:
        raise EmptyDataset("cannot infer an encoding schema from no records")
    variables = []
    offset = 0
    for name, enum_type in CATEGORICAL_FIELDS:
        if len(enum_type) == 2:
            var = VariableEncoding(name, tuple(enum_type), offset, binary=True)
        else:
            observed = {getattr(r, name) for r in dataset}
            values = tuple(v for v in enum_type if v in observed)
            var = VariableEncoding(name, values, offset, binary=False)
        variables.append(var)
        offset += var.width
    return EncodingSchema(tuple(variables), offset)


def encode(response: SurveyResponse, schema: EncodingSchema) -> np.ndarray:
    """Map a response to a 0/1 vector of length schema.total_nodes."""
    bits = np.zeros(schema.total_nodes)
    for var in schema.variables:
        value = getattr(response, var.name)
        if var.binary:
            bits[var.offset] = 1.0 if value in BINARY_POSITIVE else 0.0
        else:
            try:
                index = var.values.index(value)
            except ValueError:
                raise UnknownCategory(var.name, value.token) from None
            bits[var.offset + index] = 1.0
    return bits
