"""Dyadic reply analysis: child label conditioned on parent label.

Every reply edge whose child and parent both carry a label from a chosen
subset (by default the two claim labels, L3 and L4) is a qualifying
observation. Counting them per (child label, parent label) pair and
normalizing each parent column yields the conditional distribution
P(child label | parent label).

Self-replies count by default; an author agreeing with themself is still
a labeled reply pair. They can be excluded to restrict the estimate to
cross-author interactions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from sklearn.base import BaseEstimator

from .conversations import ConversationTree
from .errors import ConfigError
from .labels import ViewpointLabel
from .validation import check_trees

DEFAULT_SUBSET = (ViewpointLabel.L3, ViewpointLabel.L4)


@dataclass(slots=True)
class DyadicMatrix:
    """Counts and conditionals over a label subset.

    ``counts[i][j]`` is the number of qualifying edges with child label
    ``labels[i]`` and parent label ``labels[j]``. ``conditionals`` holds
    column-normalized probabilities; a column with no observations is all
    None rather than a made-up distribution.
    """

    labels: tuple[ViewpointLabel, ...]
    counts: tuple[tuple[int, ...], ...]
    conditionals: tuple[tuple[float | None, ...], ...]
    n_qualifying_edges: int
    include_self_replies: bool

    def to_dict(self) -> dict:
        return {
            "subset": [label.name for label in self.labels],
            "counts": [list(row) for row in self.counts],
            "conditionals": [list(row) for row in self.conditionals],
            "n_qualifying_edges": self.n_qualifying_edges,
        }


def _normalize_subset(subset: Sequence) -> tuple[ViewpointLabel, ...]:
    labels = []
    for item in subset:
        if isinstance(item, str):
            labels.append(ViewpointLabel.from_name(item))
        else:
            labels.append(ViewpointLabel(item))
    if len(labels) < 2:
        raise ConfigError("label subset needs at least two labels to condition on")
    if len(set(labels)) != len(labels):
        raise ConfigError(f"label subset has duplicates: {[l.name for l in labels]}")
    return tuple(labels)


def dyadic_conditionals(
    trees: Iterable[ConversationTree],
    subset: Sequence = DEFAULT_SUBSET,
    include_self_replies: bool = True,
) -> DyadicMatrix:
    """Count qualifying (child label, parent label) reply pairs.

    Counting is additive: the matrix for a concatenation of tree
    collections is the entrywise sum of the per-collection matrices.
    """
    labels = _normalize_subset(subset)
    index = {label: i for i, label in enumerate(labels)}
    k = len(labels)
    counts = [[0] * k for _ in range(k)]
    n_edges = 0
    for tree in trees:
        records = tree.records
        for child_id, parent_id in tree.parent.items():
            child = records[child_id]
            parent = records[parent_id]
            i = index.get(child.label)
            if i is None:
                continue
            j = index.get(parent.label)
            if j is None:
                continue
            if not include_self_replies and child.author_id == parent.author_id:
                continue
            counts[i][j] += 1
            n_edges += 1

    conditionals: list[tuple[float | None, ...]] = []
    col_totals = [sum(counts[i][j] for i in range(k)) for j in range(k)]
    for i in range(k):
        row = tuple(
            (counts[i][j] / col_totals[j]) if col_totals[j] else None for j in range(k)
        )
        conditionals.append(row)

    return DyadicMatrix(
        labels=labels,
        counts=tuple(tuple(row) for row in counts),
        conditionals=tuple(conditionals),
        n_qualifying_edges=n_edges,
        include_self_replies=include_self_replies,
    )


class DyadicInteractions(BaseEstimator):
    """Estimator for the dyadic reply-pair analysis.

    ``fit`` aggregates qualifying reply pairs from a collection of
    conversation trees and exposes the result as fitted attributes.

    Parameters
    ----------
    subset : sequence of labels, default=(L3, L4)
        Labels (ViewpointLabel values or names like "L3") that both ends
        of an edge must carry for the edge to qualify.
    include_self_replies : bool, default=True
        Count edges where child and parent share an author.

    Attributes
    ----------
    labels_ : tuple of ViewpointLabel
    counts_ : tuple of tuple of int
    conditionals_ : tuple of tuple of (float or None)
    n_qualifying_edges_ : int
    """

    def __init__(self, subset: Sequence = DEFAULT_SUBSET, include_self_replies: bool = True):
        self.subset = subset
        self.include_self_replies = include_self_replies

    def fit(self, X, y=None):
        trees = check_trees(X)
        result = dyadic_conditionals(
            trees, subset=self.subset, include_self_replies=self.include_self_replies
        )
        self.labels_ = result.labels
        self.counts_ = result.counts
        self.conditionals_ = result.conditionals
        self.n_qualifying_edges_ = result.n_qualifying_edges
        self.result_ = result
        return self
