"""Shared fixtures and tree-building helpers."""

import pytest
from hypothesis import HealthCheck, settings

from vdk import ConversationTree, TweetRecord, ViewpointLabel

settings.register_profile(
    "vdk",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("vdk")


def make_record(
    tweet_id,
    author_id,
    conversation_id="c1",
    parent_id=None,
    label=ViewpointLabel.L1,
):
    if isinstance(label, str):
        label = ViewpointLabel[label]
    return TweetRecord(
        tweet_id=tweet_id,
        author_id=author_id,
        conversation_id=conversation_id,
        parent_id=parent_id,
        text=None,
        label=label,
    )


def make_tree(conversation_id, nodes):
    """Build a tree from (tweet_id, author_id, label, parent_id) tuples.

    Exactly one node must have parent_id None; that node becomes the root.
    """
    records = {}
    parent = {}
    root = None
    for tweet_id, author_id, label, parent_id in nodes:
        records[tweet_id] = make_record(
            tweet_id, author_id, conversation_id, parent_id, label
        )
        if parent_id is None:
            root = tweet_id
        else:
            parent[tweet_id] = parent_id
    assert root is not None, "tree helper needs a root node"
    tree = ConversationTree(
        conversation_id=conversation_id, records=records, parent=parent, root=root
    )
    tree.validate()
    return tree


# Toy conversation: root plus two replies plus one nested reply.
# Authors u1 (root and the nested reply), u2, u3; labels L3/L4/L2/L3.
FOUR_TWEET_LINES = [
    '{"id":"A","author_id":"u1","conversation_id":"A","label":"L3"}',
    '{"id":"B","author_id":"u2","conversation_id":"A","replied_to":"A","label":"L4"}',
    '{"id":"C","author_id":"u3","conversation_id":"A","replied_to":"A","label":"L2"}',
    '{"id":"D","author_id":"u1","conversation_id":"A",'
    '"referenced_tweets":[{"type":"replied_to","id":"C"}],"label":"L3"}',
]


@pytest.fixture
def four_tweet_lines():
    return list(FOUR_TWEET_LINES)


@pytest.fixture
def four_tweet_file(tmp_path, four_tweet_lines):
    path = tmp_path / "tweets.jsonl"
    path.write_text("\n".join(four_tweet_lines) + "\n", encoding="utf-8")
    return path


def pair_tree(label_a=ViewpointLabel.L3, label_b=ViewpointLabel.L4):
    """Two-author pair: root by ua, one reply by ub."""
    return make_tree(
        "pair",
        [
            ("t1", "ua", label_a, None),
            ("t2", "ub", label_b, "t1"),
        ],
    )
