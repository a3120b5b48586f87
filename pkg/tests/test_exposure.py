"""Exposure networks and viewpoint matrices."""

import numpy as np

from vdk import (
    ViewpointLabel,
    build_viewpoint_matrix,
    build_viewpoint_network,
)
from vdk.exposure import matrix_to_csv_text

from conftest import make_tree, pair_tree


def matrix_of(tree):
    return build_viewpoint_matrix(build_viewpoint_network(tree))


def test_pair_exposures_both_directions():
    network = build_viewpoint_network(pair_tree())
    assert network.users == ("ua", "ub")
    assert sorted(network.exposure_edges) == [
        ("ua", "ub", ViewpointLabel.L3),
        ("ub", "ua", ViewpointLabel.L4),
    ]
    matrix = build_viewpoint_matrix(network)
    assert matrix.column("ua").tolist() == [0, 0, 0, 1]
    assert matrix.column("ub").tolist() == [0, 0, 1, 0]


def test_third_user_reply_extends_only_target():
    tree = make_tree(
        "c",
        [
            ("t1", "alice", "L3", None),
            ("t2", "bob", "L4", "t1"),
            ("t3", "carol", "L2", "t2"),
        ],
    )
    matrix = matrix_of(tree)
    # bob gains carol's L2 on top of alice's L3; alice unchanged by t3
    assert matrix.column("bob").tolist() == [0, 1, 1, 0]
    assert matrix.column("alice").tolist() == [0, 0, 0, 1]
    assert matrix.column("carol").tolist() == [0, 0, 0, 1]


def test_self_replies_create_no_exposure():
    tree = make_tree(
        "c",
        [
            ("t1", "u1", "L3", None),
            ("t2", "u1", "L4", "t1"),  # self-reply
            ("t3", "u2", "L2", "t2"),
        ],
    )
    network = build_viewpoint_network(tree)
    assert all(src != dst for src, dst, _ in network.exposure_edges)
    assert len(network.exposure_edges) == 2  # only the t3 edge counts


def test_total_mass_is_twice_cross_author_edges():
    tree = make_tree(
        "c",
        [
            ("t1", "u1", "L1", None),
            ("t2", "u2", "L2", "t1"),
            ("t3", "u1", "L3", "t2"),
            ("t4", "u1", "L4", "t3"),  # self-reply, no mass
        ],
    )
    matrix = matrix_of(tree)
    assert int(matrix.counts.sum()) == 2 * 2


def test_repeat_replies_accumulate_multiplicity():
    tree = make_tree(
        "c",
        [
            ("t1", "u1", "L3", None),
            ("t2", "u2", "L2", "t1"),
            ("t3", "u2", "L2", "t1"),
        ],
    )
    matrix = matrix_of(tree)
    assert matrix.column("u2").tolist() == [0, 0, 2, 0]
    assert matrix.column("u1").tolist() == [0, 2, 0, 0]


def test_own_unanswered_leaf_label_never_matters():
    def column(label):
        tree = make_tree(
            "c",
            [
                ("t1", "u1", "L3", None),
                ("t2", "u2", "L4", "t1"),
                ("t3", "u1", label, "t2"),  # u1's leaf, nobody replies to it
            ],
        )
        return matrix_of(tree).column("u1").tolist()

    baseline = column("L1")
    for label in ("L2", "L3", "L4"):
        assert column(label) == baseline


def test_columns_sorted_by_author_id():
    tree = make_tree(
        "c",
        [
            ("t1", "zz", "L2", None),
            ("t2", "aa", "L3", "t1"),
            ("t3", "mm", "L4", "t1"),
        ],
    )
    matrix = matrix_of(tree)
    assert matrix.authors == ("aa", "mm", "zz")
    assert matrix.counts.shape == (4, 3)
    assert matrix.counts.dtype == np.int64


def test_all_zero_matrix_when_single_author():
    tree = make_tree("c", [("t1", "u1", "L3", None), ("t2", "u1", "L4", "t1")])
    matrix = matrix_of(tree)
    assert matrix.counts.sum() == 0
    assert matrix.authors == ("u1",)


def test_matrix_csv_dump():
    text = matrix_to_csv_text(matrix_of(pair_tree()))
    lines = text.splitlines()
    assert lines[0] == "label,ua,ub"
    assert lines[1] == "L1,0,0"
    assert lines[4] == "L4,1,0"
