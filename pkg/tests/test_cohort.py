from dataclasses import replace

import pytest

from activrisk import (
    CATEGORICAL_FIELDS,
    RiskLabel,
    classify_activity,
    default_spec,
    full_support_spec,
    generate_cohort,
    infer_schema,
    load_spec,
    save_spec,
)
from activrisk.cohort import spec_from_dict, spec_to_dict


@pytest.fixture(scope="module")
def big_cohort():
    return generate_cohort(default_spec(), 10000, seed=42)


class TestGenerateCohort:
    def test_empty_cohort(self):
        assert generate_cohort(default_spec(), 0, seed=1) == []

    def test_deterministic(self):
        spec = default_spec()
        assert generate_cohort(spec, 60, seed=9) == generate_cohort(spec, 60, seed=9)

    def test_different_seeds_differ(self):
        spec = default_spec()
        assert generate_cohort(spec, 60, seed=1) != generate_cohort(spec, 60, seed=2)

    def test_records_come_from_per_index_substreams(self):
        # record i depends only on (spec, seed, i), so a shorter cohort is a
        # prefix of a longer one and records could be produced in parallel
        spec = default_spec()
        assert generate_cohort(spec, 25, seed=4) == generate_cohort(spec, 80, seed=4)[:25]

    def test_labels_always_match_the_risk_rule(self):
        for record in generate_cohort(default_spec(), 500, seed=3):
            assert record.label is classify_activity(record.activity)

    def test_marginal_fidelity(self, big_cohort):
        spec = default_spec()
        n = len(big_cohort)
        for name, enum_type in CATEGORICAL_FIELDS:
            for value, probability in zip(enum_type, spec.marginals[name]):
                observed = sum(1 for r in big_cohort if getattr(r, name) is value) / n
                assert observed == pytest.approx(probability, abs=0.02), (name, value)

    def test_zero_probability_cells_never_appear(self, big_cohort):
        from activrisk import HealthRating

        assert all(r.physical_health is not HealthRating.VERY_POOR for r in big_cohort)
        assert all(r.psych_health is not HealthRating.VERY_POOR for r in big_cohort)

    def test_default_cohort_replicates_the_36_node_schema(self, big_cohort):
        schema = infer_schema(big_cohort[:1000])
        assert schema.total_nodes == 36
        assert schema.variable("physical_health").width == 4

    def test_label_correlates_with_the_weighted_features(self, big_cohort):
        from activrisk import Band, Major

        def not_at_risk_share(records):
            records = list(records)
            return sum(1 for r in records if r.label is RiskLabel.NOT_AT_RISK) / len(records)

        sporty = not_at_risk_share(r for r in big_cohort if r.major is Major.SPORT_RELATED)
        other = not_at_risk_share(r for r in big_cohort if r.major is Major.NOT_SPORT_RELATED)
        assert sporty > other
        confident = not_at_risk_share(
            r for r in big_cohort if r.self_efficacy >= Band.HIGH
        )
        hesitant = not_at_risk_share(r for r in big_cohort if r.self_efficacy < Band.HIGH)
        assert confident > hesitant
        supported = not_at_risk_share(r for r in big_cohort if r.support >= Band.HIGH)
        unsupported = not_at_risk_share(r for r in big_cohort if r.support < Band.HIGH)
        assert supported > unsupported
        keen = not_at_risk_share(r for r in big_cohort if r.importance >= Band.HIGH)
        indifferent = not_at_risk_share(r for r in big_cohort if r.importance < Band.HIGH)
        assert keen > indifferent


class TestFullSupportSpec:
    def test_every_value_possible(self):
        spec = full_support_spec()
        for name, _ in CATEGORICAL_FIELDS:
            assert all(p > 0 for p in spec.marginals[name])

    def test_full_support_cohort_reaches_38_nodes(self):
        records = generate_cohort(full_support_spec(), 3000, seed=5)
        assert infer_schema(records).total_nodes == 38


class TestSpecSerialization:
    def test_json_round_trip(self, tmp_path):
        spec = default_spec()
        path = tmp_path / "spec.json"
        save_spec(spec, str(path))
        assert load_spec(str(path)) == spec

    def test_dict_round_trip(self):
        spec = full_support_spec()
        assert spec_from_dict(spec_to_dict(spec)) == spec

    def test_malformed_dict_rejected(self):
        with pytest.raises(ValueError):
            spec_from_dict({"marginals": {}})

    def test_bad_probabilities_rejected(self):
        raw = spec_to_dict(default_spec())
        raw["marginals"]["gender"] = [0.7, 0.7]
        with pytest.raises(ValueError):
            spec_from_dict(raw)

    def test_negative_signal_rejected(self):
        raw = spec_to_dict(default_spec())
        raw["signal_strength"] = -1.0
        with pytest.raises(ValueError):
            spec_from_dict(raw)


class TestPrevalence:
    def test_no_signal_cohort_is_near_balanced(self):
        spec = replace(default_spec(), signal_strength=0.0)
        records = generate_cohort(spec, 4000, seed=8)
        share = sum(1 for r in records if r.label is RiskLabel.AT_RISK) / len(records)
        assert 0.42 <= share <= 0.58

    def test_default_cohort_leans_not_at_risk(self, big_cohort):
        share = sum(1 for r in big_cohort if r.label is RiskLabel.AT_RISK) / len(big_cohort)
        assert 0.40 <= share <= 0.52
