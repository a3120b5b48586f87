"""Tests for reply-pair label conditionals."""

import json

import pytest

from vdk.dyadic import DEFAULT_SUBSET, DyadicInteractions, DyadicMatrix, dyadic_conditionals
from vdk.errors import ConfigError, SchemaError, ValidationError
from vdk.labels import ViewpointLabel

from conftest import make_tree, pair_tree


def star_tree():
    """One L3 root with two L4 replies and one L3 reply."""
    return make_tree(
        "star",
        [
            ("r", "u1", "L3", None),
            ("a", "u2", "L4", "r"),
            ("b", "u3", "L4", "r"),
            ("c", "u4", "L3", "r"),
        ],
    )


class TestCounts:
    def test_star_counts_and_conditionals(self):
        result = dyadic_conditionals([star_tree()])
        assert result.labels == DEFAULT_SUBSET
        # rows are child labels, columns parent labels; all parents are L3
        assert result.counts == ((1, 0), (2, 0))
        assert result.n_qualifying_edges == 3
        l3_col = [row[0] for row in result.conditionals]
        assert l3_col[0] == pytest.approx(1.0 / 3.0)
        assert l3_col[1] == pytest.approx(2.0 / 3.0)

    def test_columns_are_stochastic(self):
        trees = [star_tree(), pair_tree(label_a="L4", label_b="L3")]
        result = dyadic_conditionals(trees)
        for j in range(len(result.labels)):
            col = [result.conditionals[i][j] for i in range(len(result.labels))]
            assert all(v is not None for v in col)
            assert sum(col) == pytest.approx(1.0)

    def test_unseen_parent_label_yields_none_column(self):
        # only L3 parents appear, so the L4 column has no mass
        result = dyadic_conditionals([star_tree()])
        l4_col = [row[1] for row in result.conditionals]
        assert l4_col == [None, None]

    def test_edges_outside_subset_do_not_qualify(self):
        tree = make_tree(
            "mix",
            [
                ("r", "u1", "L3", None),
                ("a", "u2", "L2", "r"),
                ("b", "u3", "L4", "a"),
                ("c", "u4", "L4", "b"),
            ],
        )
        # r<-a has an L2 child, a<-b has an L2 parent; only b<-c qualifies
        result = dyadic_conditionals([tree])
        assert result.n_qualifying_edges == 1
        assert result.counts == ((0, 0), (0, 1))

    def test_full_label_subset(self):
        tree = make_tree(
            "full",
            [
                ("r", "u1", "L1", None),
                ("a", "u2", "L2", "r"),
                ("b", "u3", "L3", "a"),
            ],
        )
        result = dyadic_conditionals([tree], subset=("L1", "L2", "L3", "L4"))
        assert result.labels == tuple(ViewpointLabel)
        assert result.n_qualifying_edges == 2
        # L2 child under L1 parent, L3 child under L2 parent
        assert result.counts[1][0] == 1
        assert result.counts[2][1] == 1

    def test_counts_merge_additively_across_batches(self):
        trees = [star_tree(), pair_tree(), pair_tree(label_a="L4", label_b="L4")]
        merged = dyadic_conditionals(trees)
        parts = [dyadic_conditionals([t]) for t in trees]
        for i in range(2):
            for j in range(2):
                total = sum(p.counts[i][j] for p in parts)
                assert merged.counts[i][j] == total
        assert merged.n_qualifying_edges == sum(p.n_qualifying_edges for p in parts)


class TestSelfReplies:
    def self_reply_tree(self):
        return make_tree(
            "self",
            [
                ("r", "u1", "L3", None),
                ("a", "u1", "L4", "r"),
                ("b", "u2", "L4", "r"),
            ],
        )

    def test_self_replies_counted_by_default(self):
        result = dyadic_conditionals([self.self_reply_tree()])
        assert result.n_qualifying_edges == 2
        assert result.counts == ((0, 0), (2, 0))

    def test_self_replies_can_be_excluded(self):
        result = dyadic_conditionals([self.self_reply_tree()], include_self_replies=False)
        assert result.n_qualifying_edges == 1
        assert result.counts == ((0, 0), (1, 0))


class TestSubsetValidation:
    def test_empty_subset_rejected(self):
        with pytest.raises(ConfigError):
            dyadic_conditionals([pair_tree()], subset=())

    def test_singleton_subset_rejected(self):
        with pytest.raises(ConfigError):
            dyadic_conditionals([pair_tree()], subset=("L3",))

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ConfigError):
            dyadic_conditionals([pair_tree()], subset=("L3", "L3"))

    def test_unknown_label_name_rejected(self):
        with pytest.raises(SchemaError):
            dyadic_conditionals([pair_tree()], subset=("L3", "L9"))

    def test_enum_members_accepted(self):
        result = dyadic_conditionals(
            [pair_tree()], subset=(ViewpointLabel.L3, ViewpointLabel.L4)
        )
        assert result.labels == (ViewpointLabel.L3, ViewpointLabel.L4)


class TestSerialization:
    def test_to_dict_has_exact_keys(self):
        result = dyadic_conditionals([star_tree()])
        payload = result.to_dict()
        assert set(payload) == {"subset", "counts", "conditionals", "n_qualifying_edges"}
        assert payload["subset"] == ["L3", "L4"]
        assert payload["counts"] == [[1, 0], [2, 0]]
        assert payload["n_qualifying_edges"] == 3

    def test_undefined_columns_serialize_as_null(self):
        payload = dyadic_conditionals([star_tree()]).to_dict()
        text = json.dumps(payload)
        parsed = json.loads(text)
        assert parsed["conditionals"][0][1] is None
        assert parsed["conditionals"][1][1] is None


class TestEstimator:
    def test_fit_exposes_result_attributes(self):
        est = DyadicInteractions()
        fitted = est.fit([star_tree()])
        assert fitted is est
        assert est.labels_ == DEFAULT_SUBSET
        assert est.n_qualifying_edges_ == 3
        assert est.counts_ == ((1, 0), (2, 0))
        assert isinstance(est.result_, DyadicMatrix)

    def test_params_roundtrip(self):
        est = DyadicInteractions(subset=("L1", "L2"), include_self_replies=False)
        params = est.get_params()
        rebuilt = DyadicInteractions(**params)
        assert rebuilt.get_params() == params

    def test_fit_rejects_invalid_input(self):
        with pytest.raises(ValidationError):
            DyadicInteractions().fit(pair_tree())
