"""Label scheme and annotation merging."""

import pytest

from vdk import RawAnnotation, SchemaError, ViewpointLabel, merge_labels
from vdk.labels import CLAIM_VALUES, LABELS, RELEVANCE_VALUES

# full decision table over the 3x3 annotation grid
MERGE_TABLE = {
    ("relevant", "diagnostic"): ViewpointLabel.L3,
    ("relevant", "counterclaim"): ViewpointLabel.L4,
    ("relevant", "none"): ViewpointLabel.L2,
    ("irrelevant", "diagnostic"): ViewpointLabel.L3,
    ("irrelevant", "counterclaim"): ViewpointLabel.L4,
    ("irrelevant", "none"): ViewpointLabel.L1,
    ("not_english", "diagnostic"): ViewpointLabel.L3,
    ("not_english", "counterclaim"): ViewpointLabel.L4,
    ("not_english", "none"): ViewpointLabel.L1,
}


def test_merge_is_total_and_matches_decision_table():
    seen = {}
    for relevance in RELEVANCE_VALUES:
        for claim in CLAIM_VALUES:
            result = merge_labels(RawAnnotation(relevance=relevance, claim=claim))
            seen[(relevance, claim)] = result
    assert seen == MERGE_TABLE


def test_claims_survive_any_relevance():
    for relevance in RELEVANCE_VALUES:
        assert merge_labels(RawAnnotation(relevance, "diagnostic")) is ViewpointLabel.L3
        assert merge_labels(RawAnnotation(relevance, "counterclaim")) is ViewpointLabel.L4


def test_label_order_is_stable_for_row_indexing():
    assert [label.name for label in LABELS] == ["L1", "L2", "L3", "L4"]
    assert [int(label) for label in LABELS] == [0, 1, 2, 3]
    assert ViewpointLabel.L1 < ViewpointLabel.L2 < ViewpointLabel.L3 < ViewpointLabel.L4


def test_from_name_roundtrip_and_rejection():
    for label in LABELS:
        assert ViewpointLabel.from_name(label.name) is label
    with pytest.raises(SchemaError):
        ViewpointLabel.from_name("L5")
    with pytest.raises(SchemaError):
        ViewpointLabel.from_name("l1")


def test_bad_annotation_values_rejected():
    with pytest.raises(SchemaError):
        RawAnnotation(relevance="maybe", claim="none")
    with pytest.raises(SchemaError):
        RawAnnotation(relevance="relevant", claim="support")
