"""Reply-tree reconstruction, eligibility filtering and size capping.

Tweets sharing a ``conversation_id`` are assembled into a reply tree: each
tweet points at the tweet it replies to, the one tweet with no resolvable
target is the root. Reply targets are resolved only within the group;
pointers at deleted or foreign tweets are dropped, which can split a group
into several weakly connected components. Only the largest component is
kept (ties go to the component holding the smallest tweet id) and the rest
is counted in the reconstruction diagnostics.

Only reply edges are modeled. Quotes, retweets and mentions do not appear
in the input schema and never create edges.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ConfigError, CycleError, ValidationError
from .ingest import Corpus, TweetRecord
from .labels import LABELS, ViewpointLabel


@dataclass(slots=True)
class ConversationTree:
    """One reconstructed conversation.

    ``parent`` maps every non-root tweet id to the id it replies to; the
    root has no entry. Invariants (see ``validate``): exactly one root, all
    parents resolve inside the tree, no cycles, edge count is node count
    minus one.
    """

    conversation_id: str
    records: dict[str, TweetRecord]
    parent: dict[str, str]
    root: str

    @property
    def n_nodes(self) -> int:
        return len(self.records)

    @property
    def n_edges(self) -> int:
        return len(self.parent)

    def edges(self) -> Iterator[tuple[str, str]]:
        """Yield (child_id, parent_id) pairs."""
        return iter(self.parent.items())

    def children(self) -> dict[str, list[str]]:
        """Child ids per parent id, in insertion order."""
        out: dict[str, list[str]] = defaultdict(list)
        for child, parent in self.parent.items():
            out[parent].append(child)
        return out

    def distinct_authors(self) -> set[str]:
        return {record.author_id for record in self.records.values()}

    def validate(self) -> None:
        if self.root not in self.records:
            raise ValidationError(
                f"conversation {self.conversation_id!r}: root {self.root!r} is not a node"
            )
        if self.root in self.parent:
            raise ValidationError(f"conversation {self.conversation_id!r}: root has a parent")
        if len(self.parent) != len(self.records) - 1:
            raise ValidationError(
                f"conversation {self.conversation_id!r}: expected "
                f"{len(self.records) - 1} edges, found {len(self.parent)}"
            )
        for child, parent in self.parent.items():
            if child not in self.records or parent not in self.records:
                raise ValidationError(
                    f"conversation {self.conversation_id!r}: edge {child!r}->{parent!r} "
                    "leaves the node set"
                )
        reaches_root = {self.root}
        for tweet_id in self.records:
            path = []
            cursor = tweet_id
            while cursor not in reaches_root:
                path.append(cursor)
                if len(path) > len(self.records):
                    raise CycleError(self.conversation_id)
                nxt = self.parent.get(cursor)
                if nxt is None:
                    raise ValidationError(
                        f"conversation {self.conversation_id!r}: node {cursor!r} "
                        "cannot reach the root"
                    )
                cursor = nxt
            reaches_root.update(path)


@dataclass(slots=True)
class ReconstructionDiagnostics:
    """What happened while turning raw groups into trees."""

    n_groups: int = 0
    n_discarded_components: int = 0
    n_discarded_tweets: int = 0


@dataclass(slots=True)
class CorpusStats:
    n_conversations: int
    n_tweets: int
    n_edges: int
    n_users: int
    label_shares: dict[ViewpointLabel, float]


def build_conversations(corpus: Corpus) -> tuple[list[ConversationTree], ReconstructionDiagnostics]:
    """Reconstruct one reply tree per conversation id.

    Returns trees ordered by conversation id plus discard diagnostics.
    Raises CycleError when reply references loop, which means the input is
    corrupt rather than merely incomplete.
    """
    groups: dict[str, list[TweetRecord]] = defaultdict(list)
    for record in corpus.tweets:
        groups[record.conversation_id].append(record)

    trees: list[ConversationTree] = []
    diagnostics = ReconstructionDiagnostics(n_groups=len(groups))
    for conversation_id in sorted(groups):
        group = groups[conversation_id]
        records = {record.tweet_id: record for record in group}
        resolved = {
            record.tweet_id: record.parent_id
            for record in group
            if record.parent_id is not None and record.parent_id in records
        }

        _check_acyclic(conversation_id, records, resolved)

        components = _weak_components(records, resolved)
        keep = min(components, key=lambda comp: (-len(comp), min(comp)))
        if len(components) > 1:
            diagnostics.n_discarded_components += len(components) - 1
            diagnostics.n_discarded_tweets += len(records) - len(keep)

        kept_ids = set(keep)
        tree_records = {tweet_id: records[tweet_id] for tweet_id in sorted(kept_ids)}
        parent = {c: p for c, p in resolved.items() if c in kept_ids}
        roots = [tweet_id for tweet_id in tree_records if tweet_id not in parent]
        if len(roots) != 1:
            raise ValidationError(
                f"conversation {conversation_id!r}: expected one root, found {len(roots)}"
            )
        tree = ConversationTree(
            conversation_id=conversation_id,
            records=tree_records,
            parent=parent,
            root=roots[0],
        )
        trees.append(tree)
    return trees, diagnostics


def _check_acyclic(conversation_id: str, records: dict, resolved: dict) -> None:
    # 0 = unvisited, 1 = on the current walk, 2 = known safe
    state: dict[str, int] = {}
    for tweet_id in records:
        if state.get(tweet_id, 0) == 2:
            continue
        path = []
        cursor: str | None = tweet_id
        while cursor is not None and state.get(cursor, 0) == 0:
            state[cursor] = 1
            path.append(cursor)
            cursor = resolved.get(cursor)
        if cursor is not None and state.get(cursor) == 1:
            raise CycleError(conversation_id)
        for visited in path:
            state[visited] = 2


def _weak_components(records: dict, resolved: dict) -> list[list[str]]:
    adjacency: dict[str, list[str]] = defaultdict(list)
    for child, parent in resolved.items():
        adjacency[child].append(parent)
        adjacency[parent].append(child)
    components: list[list[str]] = []
    seen: set[str] = set()
    for tweet_id in records:
        if tweet_id in seen:
            continue
        component = [tweet_id]
        seen.add(tweet_id)
        stack = [tweet_id]
        while stack:
            for neighbor in adjacency[stack.pop()]:
                if neighbor not in seen:
                    seen.add(neighbor)
                    component.append(neighbor)
                    stack.append(neighbor)
        components.append(component)
    return components


def cap_size(tree: ConversationTree, max_nodes: int = 50) -> ConversationTree:
    """Truncate an oversized tree to at most ``max_nodes`` nodes.

    Nodes are kept in breadth-first order from the root, ties within a
    level broken by ascending tweet id, so the kept set is always a
    connected prefix of the tree. Trees already within the limit are
    returned unchanged, which makes capping idempotent.
    """
    if max_nodes < 2:
        raise ConfigError(f"max_nodes must be at least 2, got {max_nodes}")
    if tree.n_nodes <= max_nodes:
        return tree

    children = tree.children()
    selected: list[str] = []
    level = [tree.root]
    while level and len(selected) < max_nodes:
        level = sorted(level)
        for tweet_id in level:
            if len(selected) == max_nodes:
                break
            selected.append(tweet_id)
        nxt: list[str] = []
        for tweet_id in level:
            nxt.extend(children.get(tweet_id, ()))
        level = nxt

    # A level-order prefix keeps every parent, but re-check so a dropped
    # parent can never orphan a kept node.
    kept: set[str] = set()
    for tweet_id in selected:
        if tweet_id == tree.root or tree.parent[tweet_id] in kept:
            kept.add(tweet_id)

    capped = ConversationTree(
        conversation_id=tree.conversation_id,
        records={tweet_id: tree.records[tweet_id] for tweet_id in sorted(kept)},
        parent={c: p for c, p in tree.parent.items() if c in kept},
        root=tree.root,
    )
    capped.validate()
    return capped


def filter_eligible(
    trees: Iterable[ConversationTree], min_nodes: int = 2, min_authors: int = 2
) -> list[ConversationTree]:
    """Keep conversations with enough tweets and enough distinct authors."""
    if min_nodes < 1:
        raise ConfigError(f"min_nodes must be at least 1, got {min_nodes}")
    if min_authors < 1:
        raise ConfigError(f"min_authors must be at least 1, got {min_authors}")
    return [
        tree
        for tree in trees
        if tree.n_nodes >= min_nodes and len(tree.distinct_authors()) >= min_authors
    ]


def corpus_stats(trees: Iterable[ConversationTree]) -> CorpusStats:
    """Aggregate node, edge, user and label-share counts over trees."""
    n_conversations = 0
    n_tweets = 0
    n_edges = 0
    users: set[str] = set()
    label_counts = {label: 0 for label in LABELS}
    for tree in trees:
        n_conversations += 1
        n_tweets += tree.n_nodes
        n_edges += tree.n_edges
        for record in tree.records.values():
            users.add(record.author_id)
            label_counts[record.label] += 1
    # an empty corpus has no label distribution, not a zero one
    shares = (
        {label: label_counts[label] / n_tweets for label in LABELS} if n_tweets else {}
    )
    return CorpusStats(
        n_conversations=n_conversations,
        n_tweets=n_tweets,
        n_edges=n_edges,
        n_users=len(users),
        label_shares=shares,
    )


def tree_to_dict(tree: ConversationTree) -> dict:
    """JSON-ready audit view of one tree, deterministically ordered."""
    return {
        "conversation_id": tree.conversation_id,
        "root": tree.root,
        "nodes": [
            {
                "id": tweet_id,
                "author_id": tree.records[tweet_id].author_id,
                "label": tree.records[tweet_id].label.name,
            }
            for tweet_id in sorted(tree.records)
        ],
        "edges": sorted([child, parent] for child, parent in tree.parent.items()),
    }


def write_trees_jsonl(trees: Iterable[ConversationTree], path: str | Path) -> int:
    path = Path(path)
    count = 0
    with path.open("w", encoding="utf-8") as handle:
        for tree in trees:
            handle.write(json.dumps(tree_to_dict(tree), ensure_ascii=False))
            handle.write("\n")
            count += 1
    return count
