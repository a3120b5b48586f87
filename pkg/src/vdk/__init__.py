"""Viewpoint diversity analytics for reply-tree conversations.

The pipeline: ingest labeled tweets (JSONL), reconstruct reply trees per
conversation, derive per-user viewpoint exposure, then score viewpoint
diversity two ways (per-user Fragmentation, per-conversation
Representation) plus dyadic reply-pair conditionals. A seeded synthetic
generator produces ground-truth corpora for validation, and the ``vdk``
command line drives everything end to end.
"""

from .conversations import (
    ConversationTree,
    CorpusStats,
    build_conversations,
    cap_size,
    corpus_stats,
    filter_eligible,
    write_trees_jsonl,
)
from .dyadic import DyadicInteractions, DyadicMatrix, dyadic_conditionals
from .errors import (
    ConfigError,
    CycleError,
    ParseError,
    SchemaError,
    ValidationError,
    VdkError,
)
from .exposure import (
    ViewpointMatrix,
    ViewpointNetwork,
    build_viewpoint_matrix,
    build_viewpoint_network,
)
from .ingest import (
    Corpus,
    TweetRecord,
    load_corpus,
    parse_tweet_line,
    write_corpus_jsonl,
)
from .labels import LABELS, RawAnnotation, ViewpointLabel, merge_labels
from .metrics import (
    FragmentationScore,
    FragmentationScorer,
    Histogram,
    LabelDistribution,
    RepresentationScore,
    RepresentationScorer,
    conversation_fragmentation,
    fragmentation_scores,
    pool_distribution,
    raw_kl_divergence,
    representation_scores,
    score_histogram,
)
from .report import RunConfig, run_analyze, run_stats, run_synth
from .synth import GeneratorConfig, SizeDistribution, generate_corpus, generate_jsonl_lines

__version__ = "0.1.0"

__all__ = [
    "ConversationTree",
    "Corpus",
    "CorpusStats",
    "ConfigError",
    "CycleError",
    "DyadicInteractions",
    "DyadicMatrix",
    "FragmentationScore",
    "FragmentationScorer",
    "GeneratorConfig",
    "Histogram",
    "LABELS",
    "LabelDistribution",
    "ParseError",
    "RawAnnotation",
    "RepresentationScore",
    "RepresentationScorer",
    "RunConfig",
    "SchemaError",
    "SizeDistribution",
    "TweetRecord",
    "ValidationError",
    "VdkError",
    "ViewpointLabel",
    "ViewpointMatrix",
    "ViewpointNetwork",
    "build_conversations",
    "build_viewpoint_matrix",
    "build_viewpoint_network",
    "cap_size",
    "conversation_fragmentation",
    "corpus_stats",
    "dyadic_conditionals",
    "filter_eligible",
    "fragmentation_scores",
    "generate_corpus",
    "generate_jsonl_lines",
    "load_corpus",
    "merge_labels",
    "parse_tweet_line",
    "pool_distribution",
    "raw_kl_divergence",
    "representation_scores",
    "run_analyze",
    "run_stats",
    "run_synth",
    "score_histogram",
    "write_corpus_jsonl",
    "write_trees_jsonl",
]
