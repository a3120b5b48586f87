"""The four-way viewpoint label scheme and annotation merging.

Tweets carry one of four labels:

  L1  irrelevant to the topic (or not analyzable)
  L2  on topic but expressing no viewpoint
  L3  stating the diagnostic claim under study
  L4  stating the counterclaim

Raw annotations arrive as a (relevance, claim) pair and are collapsed to a
single label by ``merge_labels``. Claims dominate relevance: a tweet that
states either claim keeps the claim label even when the relevance pass
flagged it irrelevant or not English.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

from .errors import SchemaError


class ViewpointLabel(IntEnum):
    """Viewpoint label; the integer value doubles as the matrix row index."""

    L1 = 0
    L2 = 1
    L3 = 2
    L4 = 3

    @classmethod
    def from_name(cls, name: str) -> "ViewpointLabel":
        try:
            return cls[name]
        except KeyError:
            valid = ", ".join(m.name for m in cls)
            raise SchemaError(f"unknown viewpoint label {name!r}, expected one of {valid}") from None


LABELS: tuple[ViewpointLabel, ...] = tuple(ViewpointLabel)

RELEVANCE_VALUES = ("relevant", "irrelevant", "not_english")
CLAIM_VALUES = ("diagnostic", "counterclaim", "none")


@dataclass(frozen=True, slots=True)
class RawAnnotation:
    """One tweet's annotation pair before merging."""

    relevance: str
    claim: str

    def __post_init__(self) -> None:
        if self.relevance not in RELEVANCE_VALUES:
            raise SchemaError(
                f"relevance must be one of {RELEVANCE_VALUES}, got {self.relevance!r}"
            )
        if self.claim not in CLAIM_VALUES:
            raise SchemaError(f"claim must be one of {CLAIM_VALUES}, got {self.claim!r}")


def merge_labels(annotation: RawAnnotation) -> ViewpointLabel:
    """Collapse a (relevance, claim) pair into a single viewpoint label.

    Any diagnostic claim yields L3 and any counterclaim yields L4, no matter
    what the relevance pass said. Without a claim, relevant tweets become L2
    and everything else becomes L1.
    """
    if annotation.claim == "diagnostic":
        return ViewpointLabel.L3
    if annotation.claim == "counterclaim":
        return ViewpointLabel.L4
    if annotation.relevance == "relevant":
        return ViewpointLabel.L2
    return ViewpointLabel.L1
