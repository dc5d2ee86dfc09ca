"""Seeded synthetic-cohort generator.

Categorical fields are sampled from per-variable marginals (defaults match
the published 146-student frequency tables).  A latent activity propensity
p = sigmoid(beta * sum_v w_v * z_v + noise), with z_v the standardized
per-variable effect, drives the sampled activity volumes, and the record's
label is always computed from the generated log by the risk rule, so labels
are oracle-consistent by construction.  The generator's job is a learnable,
verifiable dataset, not a replica of the true joint distribution.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .encoding import BINARY_POSITIVE
from .risk import classify_activity
from .survey import CATEGORICAL_FIELDS, ActivityLog, SurveyResponse

_MARGINAL_TOLERANCE = 1e-9

# Observed value counts (n=146), listed in each type's declared value order.
_TABLE_COUNTS: dict[str, tuple[int, ...]] = {
    "gender": (56, 90),            # male, female
    "hispanic": (120, 26),         # yes, no
    "major": (103, 43),            # sport_related, not_sport_related
    "physical_health": (0, 16, 50, 59, 21),   # very_poor .. excellent
    "psych_health": (0, 7, 30, 77, 32),
    "diet": (5, 23, 67, 43, 8),
    "self_efficacy": (1, 6, 29, 61, 49),      # really_low .. really_high
    "importance": (1, 47, 58, 35, 5),
    "expectations": (5, 17, 36, 48, 40),
    "support": (5, 22, 50, 44, 25),
}


@dataclass(frozen=True)
class VolumeModel:
    """Activity-volume sampling for one intensity, conditioned on propensity p.

    Days are Binomial(7, day_base + day_gain * p); minutes are normal around
    min_base + min_gain * p (clipped at 0, and forced to 0 on zero days).
    """

    day_base: float
    day_gain: float
    min_base: float
    min_gain: float
    min_sd: float


@dataclass(frozen=True)
class CohortSpec:
    """Marginals plus the feature-to-activity signal definition.

    propensity_offset shifts the latent scale and is the knob for moving
    the at-risk share; the default of 0 keeps the no-signal cohort near
    a 50/50 split.
    """

    marginals: dict[str, tuple[float, ...]]
    signal_strength: float
    coefficients: dict[str, float]
    noise_sd: float
    propensity_offset: float
    moderate: VolumeModel
    vigorous: VolumeModel

    def __post_init__(self):
        names = [name for name, _ in CATEGORICAL_FIELDS]
        if sorted(self.marginals) != sorted(names):
            raise ValueError("marginals must cover exactly the categorical variables")
        for name, enum_type in CATEGORICAL_FIELDS:
            probs = self.marginals[name]
            if len(probs) != len(enum_type):
                raise ValueError(f"{name}: expected {len(enum_type)} probabilities")
            if any(p < 0 for p in probs):
                raise ValueError(f"{name}: negative probability")
            if abs(sum(probs) - 1.0) > _MARGINAL_TOLERANCE:
                raise ValueError(f"{name}: probabilities sum to {sum(probs)!r}, not 1")
        if self.signal_strength < 0:
            raise ValueError("signal_strength must be >= 0")
        if self.noise_sd < 0:
            raise ValueError("noise_sd must be >= 0")
        unknown = set(self.coefficients) - set(names)
        if unknown:
            raise ValueError(f"coefficients for unknown variables: {sorted(unknown)}")


def _fractions(counts: Sequence[int]) -> tuple[float, ...]:
    total = sum(counts)
    return tuple(c / total for c in counts)


def default_spec() -> CohortSpec:
    """Table-frequency marginals and a strong feature-to-activity signal.

    very_poor health categories keep probability 0, matching the observed
    value support, so schemas inferred from this cohort replicate the
    36-input-node layout.
    """
    return CohortSpec(
        marginals={name: _fractions(counts) for name, counts in _TABLE_COUNTS.items()},
        signal_strength=3.0,
        coefficients={
            "self_efficacy": 0.8,
            "support": 0.6,
            "major": 1.3,
            "importance": 1.0,
        },
        noise_sd=1.0,
        propensity_offset=0.0,
        moderate=VolumeModel(day_base=0.12, day_gain=0.60, min_base=13.0, min_gain=31.0, min_sd=8.0),
        vigorous=VolumeModel(day_base=0.05, day_gain=0.46, min_base=9.0, min_gain=23.0, min_sd=8.0),
    )


def full_support_spec() -> CohortSpec:
    """Default spec with every categorical value given nonzero probability."""
    spec = default_spec()
    marginals = {}
    for name, counts in _TABLE_COUNTS.items():
        marginals[name] = _fractions(tuple(max(c, 1) for c in counts))
    return replace(spec, marginals=marginals)


def _value_scores(enum_type) -> np.ndarray:
    """Numeric effect score per value, in declaration order."""
    if len(enum_type) == 2:
        return np.array([1.0 if v in BINARY_POSITIVE else 0.0 for v in enum_type])
    return np.array([float(v.value) for v in enum_type])


def _standardizers(spec: CohortSpec):
    """(scores, mean, sd, weight) per variable with a nonzero coefficient."""
    out = {}
    for name, enum_type in CATEGORICAL_FIELDS:
        weight = spec.coefficients.get(name, 0.0)
        if weight == 0.0:
            continue
        probs = np.array(spec.marginals[name])
        scores = _value_scores(enum_type)
        mean = float(probs @ scores)
        sd = math.sqrt(float(probs @ (scores - mean) ** 2))
        out[name] = (scores, mean, sd, weight)
    return out


def _sample_volume(model: VolumeModel, p: float, rng: np.random.Generator):
    days = int(rng.binomial(7, min(1.0, max(0.0, model.day_base + model.day_gain * p))))
    if days == 0:
        return days, 0.0
    minutes = rng.normal(model.min_base + model.min_gain * p, model.min_sd)
    return days, round(max(0.0, minutes), 1)


def _generate_one(spec: CohortSpec, standardizers, rng: np.random.Generator) -> SurveyResponse:
    values = {}
    effect = 0.0
    for name, enum_type in CATEGORICAL_FIELDS:
        probs = spec.marginals[name]
        index = int(rng.choice(len(probs), p=probs))
        values[name] = list(enum_type)[index]
        if name in standardizers:
            scores, mean, sd, weight = standardizers[name]
            if sd > 0:
                effect += weight * (scores[index] - mean) / sd
    z = spec.propensity_offset + spec.signal_strength * effect + rng.normal(0.0, spec.noise_sd)
    p = 1.0 / (1.0 + math.exp(-z))
    mod_days, mod_min = _sample_volume(spec.moderate, p, rng)
    vig_days, vig_min = _sample_volume(spec.vigorous, p, rng)
    log = ActivityLog(mod_days, mod_min, vig_days, vig_min)
    return SurveyResponse(**values, activity=log, label=classify_activity(log))


def generate_cohort(spec: CohortSpec, n: int, seed: int) -> list[SurveyResponse]:
    """n labeled records, deterministic per (spec, n, seed).

    Each record draws from its own seed-derived substream, so records could
    be generated in parallel without changing the output.
    """
    standardizers = _standardizers(spec)
    streams = np.random.SeedSequence(seed).spawn(n)
    return [
        _generate_one(spec, standardizers, np.random.default_rng(stream))
        for stream in streams
    ]


def spec_to_dict(spec: CohortSpec) -> dict:
    return {
        "marginals": {name: list(probs) for name, probs in spec.marginals.items()},
        "signal_strength": spec.signal_strength,
        "coefficients": dict(spec.coefficients),
        "noise_sd": spec.noise_sd,
        "propensity_offset": spec.propensity_offset,
        "moderate": vars(spec.moderate).copy(),
        "vigorous": vars(spec.vigorous).copy(),
    }


def spec_from_dict(raw: dict) -> CohortSpec:
    try:
        return CohortSpec(
            marginals={name: tuple(p) for name, p in raw["marginals"].items()},
            signal_strength=float(raw["signal_strength"]),
            coefficients={k: float(v) for k, v in raw.get("coefficients", {}).items()},
            noise_sd=float(raw["noise_sd"]),
            propensity_offset=float(raw.get("propensity_offset", 0.0)),
            moderate=VolumeModel(**raw["moderate"]),
            vigorous=VolumeModel(**raw["vigorous"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed cohort spec: {exc}") from None


def load_spec(path: str) -> CohortSpec:
    with open(path, encoding="utf-8") as handle:
        return spec_from_dict(json.load(handle))


def save_spec(spec: CohortSpec, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(spec_to_dict(spec), handle, indent=2, sort_keys=True)
        handle.write("\n")
