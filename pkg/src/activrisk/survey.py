"""Domain types for one survey response and the scale-aggregation arithmetic.

Raw questionnaire items are averaged into five-band ordinal variables;
band boundaries are half-open unit intervals with inclusive upper edges,
e.g. an average in (3, 4] is HIGH and anything at or below 1 is REALLY_LOW.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Sequence

from .errors import EmptyScale, InvalidAnswer


class TokenMixin:
    """Lowercase snake token used in CSV files and model files."""

    @property
    def token(self) -> str:
        return self.name.lower()

    @classmethod
    def from_token(cls, token: str):
        try:
            return cls[token.strip().upper()]
        except KeyError:
            raise InvalidAnswer(
                f"{cls.__name__} has no value {token!r}"
            ) from None


class Band(TokenMixin, IntEnum):
    """Five ordered labels for an aggregated scale average."""

    REALLY_LOW = 1
    LOW = 2
    MEDIUM = 3
    HIGH = 4
    REALLY_HIGH = 5


class HealthRating(TokenMixin, IntEnum):
    """Five ordered labels for self-perceived health and diet quality."""

    VERY_POOR = 1
    POOR = 2
    FAIR = 3
    GOOD = 4
    EXCELLENT = 5


class Gender(TokenMixin, Enum):
    MALE = "male"
    FEMALE = "female"


class YesNo(TokenMixin, Enum):
    YES = "yes"
    NO = "no"


class Major(TokenMixin, Enum):
    SPORT_RELATED = "sport_related"
    NOT_SPORT_RELATED = "not_sport_related"


class RiskLabel(TokenMixin, Enum):
    """Binary class; AT_RISK is the positive class for every metric."""

    AT_RISK = "at_risk"
    NOT_AT_RISK = "not_at_risk"


@dataclass(frozen=True)
class ActivityLog:
    """Seven-day activity recall: days per week and average minutes per day."""

    mod_days: int
    mod_min: float
    vig_days: int
    vig_min: float

    def __post_init__(self):
        for name in ("mod_days", "vig_days"):
            d = getattr(self, name)
            if d != int(d) or not 0 <= d <= 7:
                raise ValueError(f"{name} must be an integer in 0..7, got {d!r}")
            object.__setattr__(self, name, int(d))
        for name in ("mod_min", "vig_min"):
            m = float(getattr(self, name))
            if not math.isfinite(m) or m < 0:
                raise ValueError(f"{name} must be a finite non-negative number, got {m!r}")
            object.__setattr__(self, name, m)
        if self.mod_days == 0 and self.mod_min != 0:
            raise ValueError("mod_min must be 0 when mod_days is 0")
        if self.vig_days == 0 and self.vig_min != 0:
            raise ValueError("vig_min must be 0 when vig_days is 0")


@dataclass(frozen=True)
class SurveyResponse:
    """One participant: demographics, perceptions, scale bands, activity log."""

    gender: Gender
    hispanic: YesNo
    major: Major
    physical_health: HealthRating
    psych_health: HealthRating
    diet: HealthRating
    self_efficacy: Band
    importance: Band
    expectations: Band
    support: Band
    activity: ActivityLog
    label: RiskLabel | None = None


# Categorical input variables in canonical CSV/schema order.
CATEGORICAL_FIELDS: tuple[tuple[str, type], ...] = (
    ("gender", Gender),
    ("hispanic", YesNo),
    ("major", Major),
    ("physical_health", HealthRating),
    ("psych_health", HealthRating),
    ("diet", HealthRating),
    ("self_efficacy", Band),
    ("importance", Band),
    ("expectations", Band),
    ("support", Band),
)


def band_of(value: float) -> Band:
    """Map a scale average to its band; values at or below 1 are REALLY_LOW."""
    if value > 5:
        raise InvalidAnswer(f"scale average {value!r} exceeds 5")
    if value <= 1:
        return Band.REALLY_LOW
    if value <= 2:
        return Band.LOW
    if value <= 3:
        return Band.MEDIUM
    if value <= 4:
        return Band.HIGH
    return Band.REALLY_HIGH


def aggregate_likert(answers: Sequence[int]) -> tuple[float, Band]:
    """Average 1..5 answers of one scale and band the result."""
    if not answers:
        raise EmptyScale("cannot aggregate an empty answer list")
    for a in answers:
        if a not in (1, 2, 3, 4, 5):
            raise InvalidAnswer(f"likert answer {a!r} not in 1..5")
    mean = sum(answers) / len(answers)
    return mean, band_of(mean)


def expectations_score(pairs: Sequence[tuple[int, int]]) -> tuple[float, Band]:
    """Score (importance, frequency) pairs: mean of products, rescaled by 3.

    Importance is answered 1..5 and frequency 1..3, so the raw product mean
    lies in [1, 15]; dividing by 3 puts the score on the same scale the other
    banded variables use.  The true minimum 1/3 falls below 1 and lands in
    REALLY_LOW.
    """
    if not pairs:
        raise EmptyScale("cannot score an empty expectations list")
    total = 0
    for importance, frequency in pairs:
        if importance not in (1, 2, 3, 4, 5):
            raise InvalidAnswer(f"importance {importance!r} not in 1..5")
        if frequency not in (1, 2, 3):
            raise InvalidAnswer(f"frequency {frequency!r} not in 1..3")
        total += importance * frequency
    score = total / len(pairs) / 3
    return score, band_of(score)
