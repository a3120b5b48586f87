"""Diversity metrics over exposure matrices and conversation trees.

Two metrics, both available in a with-L1 and a without-L1 variant:

Fragmentation (per user, within one conversation). A user's exposure
profile is their column of the viewpoint matrix. The score is one minus
the mean cosine similarity between the user's column and every other
user's nonzero column. High scores mean the user saw a mix of viewpoints
that the rest of the conversation did not see. Users with an all-zero
column have no defined score; if fewer than two users have nonzero
columns, nobody in the conversation does.

Representation (per conversation, within one topic pool). The divergence
between a conversation's label distribution and the pooled distribution
over all conversations, measured as Kullback-Leibler divergence with
natural logarithms, then normalized by the topic-wide maximum so scores
land in [0, 1]. Conversations with no tweets in the active label set have
no defined score and do not take part in the normalization.

The without-L1 variant drops the L1 row (or the L1 label mass) before
computing anything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .conversations import ConversationTree
from .errors import ValidationError
from .exposure import ViewpointMatrix, build_viewpoint_matrix, build_viewpoint_network
from .labels import LABELS, ViewpointLabel
from .validation import check_bin_width, check_trees

REASON_ZERO_EXPOSURE = "zero_exposure"
REASON_TOO_FEW_USERS = "too_few_users"


@dataclass(slots=True)
class FragmentationScore:
    conversation_id: str
    author_id: str
    score: float | None
    defined: bool
    reason: str | None = None


@dataclass(slots=True)
class RepresentationScore:
    conversation_id: str
    raw_kl: float | None
    score: float | None
    defined: bool


@dataclass(slots=True)
class LabelDistribution:
    """A probability distribution over an ordered set of viewpoint labels."""

    labels: tuple[ViewpointLabel, ...]
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def probabilities(self) -> tuple[float, ...]:
        total = self.total
        if total == 0:
            return ()
        return tuple(c / total for c in self.counts)


@dataclass(slots=True)
class Histogram:
    bin_width: float
    counts: tuple[int, ...]
    shares: tuple[float, ...]

    @property
    def n_bins(self) -> int:
        return len(self.counts)

    @property
    def n_scores(self) -> int:
        return sum(self.counts)

    def bin_edges(self) -> list[tuple[float, float]]:
        return [
            (i * self.bin_width, min((i + 1) * self.bin_width, 1.0))
            for i in range(self.n_bins)
        ]


def active_labels(exclude_l1: bool) -> tuple[ViewpointLabel, ...]:
    return LABELS[1:] if exclude_l1 else LABELS


def fragmentation_scores(
    matrix: ViewpointMatrix, exclude_l1: bool = False
) -> list[FragmentationScore]:
    """Score every author column of one viewpoint matrix.

    Returns one record per author, in matrix column order. Undefined
    scores carry ``score=None`` and a reason: ``zero_exposure`` for an
    all-zero column, ``too_few_users`` when the conversation has fewer
    than two nonzero columns to compare.

    The score only depends on column directions, so scaling all counts by
    a positive constant leaves it unchanged, and permuting columns permutes
    the scores the same way.
    """
    cid = matrix.conversation_id
    authors = matrix.authors
    rows = matrix.counts.tolist()
    if exclude_l1:
        rows = rows[1:]
    cols = list(zip(*rows))
    n_users = len(authors)

    sq = [0] * n_users
    for u in range(n_users):
        sq[u] = sum(v * v for v in cols[u])
    active = [u for u in range(n_users) if sq[u] > 0]

    if len(active) < 2:
        return [
            FragmentationScore(
                cid,
                authors[u],
                None,
                False,
                REASON_ZERO_EXPOSURE if sq[u] == 0 else REASON_TOO_FEW_USERS,
            )
            for u in range(n_users)
        ]

    norms = [0.0] * n_users
    for u in active:
        norms[u] = math.sqrt(sq[u])
    totals = [0.0] * n_users
    for i, u in enumerate(active):
        cu = cols[u]
        nu = norms[u]
        for v in active[i + 1 :]:
            cv = cols[v]
            dot = 0
            for a, b in zip(cu, cv):
                dot += a * b
            sim = dot / (nu * norms[v])
            totals[u] += sim
            totals[v] += sim

    denom = len(active) - 1
    out: list[FragmentationScore] = []
    for u in range(n_users):
        if sq[u] == 0:
            out.append(FragmentationScore(cid, authors[u], None, False, REASON_ZERO_EXPOSURE))
            continue
        value = 1.0 - totals[u] / denom
        # cosine of nonnegative vectors sits in [0, 1]; trim float noise
        if value < 0.0:
            value = 0.0
        elif value > 1.0:
            value = 1.0
        out.append(FragmentationScore(cid, authors[u], value, True, None))
    return out


def conversation_fragmentation(
    tree: ConversationTree, exclude_l1: bool = False
) -> list[FragmentationScore]:
    """Full per-conversation pipeline: exposures, matrix, then scores."""
    matrix = build_viewpoint_matrix(build_viewpoint_network(tree))
    return fragmentation_scores(matrix, exclude_l1=exclude_l1)


def _label_counts(tree: ConversationTree, exclude_l1: bool) -> list[int]:
    offset = 1 if exclude_l1 else 0
    counts = [0] * (len(LABELS) - offset)
    for record in tree.records.values():
        i = record.label - offset
        if i >= 0:
            counts[i] += 1
    return counts


def pool_distribution(
    trees: Iterable[ConversationTree], exclude_l1: bool = False
) -> LabelDistribution:
    """Label distribution pooled over every tweet of every given tree."""
    labels = active_labels(exclude_l1)
    offset = 1 if exclude_l1 else 0
    counts = [0] * len(labels)
    for tree in trees:
        for record in tree.records.values():
            i = record.label - offset
            if i >= 0:
                counts[i] += 1
    return LabelDistribution(labels=labels, counts=tuple(counts))


def raw_kl_divergence(counts: Sequence[int], pool: LabelDistribution) -> float | None:
    """KL(conversation || pool) in nats, or None when counts are all zero.

    Terms with a zero conversation probability contribute nothing. A label
    present in the conversation but impossible under the pool breaks the
    definition, which cannot happen when the pool was computed over a
    collection containing the conversation.
    """
    total = sum(counts)
    if total == 0:
        return None
    pool_probs = pool.probabilities
    if len(counts) != len(pool_probs):
        raise ValidationError(
            f"conversation counts have length {len(counts)}, pool has {len(pool_probs)}"
        )
    raw = 0.0
    for c, q in zip(counts, pool_probs):
        if c:
            if q <= 0.0:
                raise ValidationError(
                    "conversation uses a label with zero pool probability"
                )
            p = c / total
            raw += p * math.log(p / q)
    return raw if raw > 0.0 else 0.0


def representation_scores(
    trees: Sequence[ConversationTree],
    exclude_l1: bool = False,
    pool: LabelDistribution | None = None,
) -> list[RepresentationScore]:
    """Score every conversation of a topic, in input order.

    The pool defaults to the distribution over the given trees. Scores are
    raw divergences divided by the largest defined raw divergence; the
    maximizing conversation therefore scores exactly 1.0, and when every
    defined divergence is zero all defined scores are 0.0.
    """
    trees = list(trees)
    if pool is None:
        pool = pool_distribution(trees, exclude_l1=exclude_l1)
    raws: list[float | None] = [
        raw_kl_divergence(_label_counts(tree, exclude_l1), pool) for tree in trees
    ]
    max_raw = max((r for r in raws if r is not None), default=0.0)
    out: list[RepresentationScore] = []
    for tree, raw in zip(trees, raws):
        if raw is None:
            out.append(RepresentationScore(tree.conversation_id, None, None, False))
        else:
            score = raw / max_raw if max_raw > 0.0 else 0.0
            out.append(RepresentationScore(tree.conversation_id, raw, score, True))
    return out


def score_histogram(scores: Iterable[float], bin_width: float = 0.05) -> Histogram:
    """Bin scores from [0, 1] into fixed-width bins.

    Bins are half open, [k*w, (k+1)*w), except the last one which closes
    at 1.0. A score sitting a hair under a bin boundary (a division
    artifact like 0.3/0.1 = 2.999...) is snapped up to the boundary bin.
    """
    width = check_bin_width(bin_width)
    n_bins = max(1, math.ceil(1.0 / width - 1e-9))
    counts = [0] * n_bins
    for s in scores:
        s = float(s)
        if not 0.0 <= s <= 1.0:
            raise ValidationError(f"scores must lie in [0, 1], got {s!r}")
        q = s / width
        idx = int(q)
        if q - idx > 1.0 - 1e-9:
            idx += 1
        if idx >= n_bins:
            idx = n_bins - 1
        counts[idx] += 1
    total = sum(counts)
    shares = tuple((c / total if total else 0.0) for c in counts)
    return Histogram(bin_width=width, counts=tuple(counts), shares=shares)


class FragmentationScorer(TransformerMixin, BaseEstimator):
    """Transformer from conversation trees to per-user fragmentation scores.

    Stateless: nothing is learned from data, so ``fit`` only validates its
    input and ``transform`` works on a fresh instance too.

    Parameters
    ----------
    exclude_l1 : bool, default=False
        Drop the L1 exposure row before scoring.
    """

    def __init__(self, exclude_l1: bool = False):
        self.exclude_l1 = exclude_l1

    def fit(self, X, y=None):
        check_trees(X)
        return self

    def transform(self, X) -> list[FragmentationScore]:
        trees = check_trees(X)
        out: list[FragmentationScore] = []
        for tree in trees:
            out.extend(conversation_fragmentation(tree, exclude_l1=self.exclude_l1))
        return out


class RepresentationScorer(TransformerMixin, BaseEstimator):
    """Transformer from conversation trees to representation scores.

    ``fit`` learns the topic pool and the normalizing maximum divergence
    from the given conversations; ``transform`` scores conversations
    against that fitted pool. ``fit_transform`` on one topic's trees is
    the standard per-topic scoring procedure and matches
    ``representation_scores``.

    Attributes
    ----------
    pool_ : LabelDistribution
    max_raw_kl_ : float
    n_conversations_ : int
    """

    def __init__(self, exclude_l1: bool = False):
        self.exclude_l1 = exclude_l1

    def fit(self, X, y=None):
        trees = check_trees(X)
        self.pool_ = pool_distribution(trees, exclude_l1=self.exclude_l1)
        raws = [
            raw_kl_divergence(_label_counts(tree, self.exclude_l1), self.pool_)
            for tree in trees
        ]
        self.max_raw_kl_ = max((r for r in raws if r is not None), default=0.0)
        self.n_conversations_ = len(trees)
        return self

    def transform(self, X) -> list[RepresentationScore]:
        if not hasattr(self, "pool_"):
            raise NotFittedError(
                "this RepresentationScorer is not fitted yet; call fit first"
            )
        trees = check_trees(X)
        out: list[RepresentationScore] = []
        for tree in trees:
            raw = raw_kl_divergence(_label_counts(tree, self.exclude_l1), self.pool_)
            if raw is None:
                out.append(RepresentationScore(tree.conversation_id, None, None, False))
            else:
                score = raw / self.max_raw_kl_ if self.max_raw_kl_ > 0.0 else 0.0
                out.append(RepresentationScore(tree.conversation_id, raw, score, True))
        return out
