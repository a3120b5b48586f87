"""Exposure extraction: who saw which viewpoint inside a conversation.

Every reply edge between two different authors creates two exposures, one
in each direction. When author B replies to author A's tweet, B has read
A's tweet (B is exposed to A's label) and A is presumed to read the reply
(A is exposed to B's label). Replying to yourself exposes nobody.

Exposures aggregate into a 4 x U count matrix per conversation: one row
per viewpoint label, one column per distinct author, entry = how often
that author was exposed to that label. Columns are ordered by ascending
author id so the matrix layout is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from io import StringIO
from pathlib import Path

import numpy as np

from .conversations import ConversationTree
from .labels import LABELS, ViewpointLabel


@dataclass(slots=True)
class ViewpointNetwork:
    """Directed exposure multigraph for one conversation.

    An edge (source, target, label) means ``target`` was exposed to
    ``label`` through a tweet written by ``source``. Parallel edges are
    real: being exposed twice counts twice.
    """

    conversation_id: str
    users: tuple[str, ...]
    exposure_edges: list[tuple[str, str, ViewpointLabel]]


@dataclass(slots=True)
class ViewpointMatrix:
    """Per-user exposure counts for one conversation.

    ``counts`` has shape (4, U) with rows indexed by ViewpointLabel value
    and columns matching ``authors`` (ascending author id).
    """

    conversation_id: str
    authors: tuple[str, ...]
    counts: np.ndarray

    def column(self, author_id: str) -> np.ndarray:
        return self.counts[:, self.authors.index(author_id)]


def build_viewpoint_network(tree: ConversationTree) -> ViewpointNetwork:
    """Derive the exposure multigraph from a conversation's reply edges."""
    users = tuple(sorted(tree.distinct_authors()))
    edges: list[tuple[str, str, ViewpointLabel]] = []
    records = tree.records
    for child_id, parent_id in tree.parent.items():
        child = records[child_id]
        parent = records[parent_id]
        if child.author_id == parent.author_id:
            continue
        edges.append((parent.author_id, child.author_id, parent.label))
        edges.append((child.author_id, parent.author_id, child.label))
    return ViewpointNetwork(
        conversation_id=tree.conversation_id, users=users, exposure_edges=edges
    )


def build_viewpoint_matrix(network: ViewpointNetwork) -> ViewpointMatrix:
    """Aggregate exposure edges into the 4 x U count matrix."""
    index = {author: i for i, author in enumerate(network.users)}
    counts = np.zeros((len(LABELS), len(network.users)), dtype=np.int64)
    for _, target, label in network.exposure_edges:
        counts[label, index[target]] += 1
    return ViewpointMatrix(
        conversation_id=network.conversation_id, authors=network.users, counts=counts
    )


def matrix_to_csv_text(matrix: ViewpointMatrix) -> str:
    """Render one matrix as CSV: a header of author ids, then 4 label rows."""
    out = StringIO()
    out.write("label," + ",".join(matrix.authors) + "\n")
    for label in LABELS:
        row = ",".join(str(int(v)) for v in matrix.counts[label])
        out.write(f"{label.name},{row}\n")
    return out.getvalue()


def write_matrix_csv(matrix: ViewpointMatrix, directory: str | Path) -> Path:
    directory = Path(directory)
    path = directory / f"matrix_{matrix.conversation_id}.csv"
    path.write_text(matrix_to_csv_text(matrix), encoding="utf-8")
    return path
