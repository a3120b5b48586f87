"""Report orchestration: wire the pipeline together and serialize results.

Everything is computed in memory first; files are then written in one
final pass, each through a temp-file-and-rename, so a failing run never
leaves a partial or stale-mixed report behind. All outputs are
deterministic functions of the inputs; the only timestamp lives in
diagnostics.json under provenance.ingested_at.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .conversations import (
    CorpusStats,
    build_conversations,
    cap_size,
    corpus_stats,
    filter_eligible,
    tree_to_dict,
)
from .dyadic import DyadicInteractions
from .errors import ConfigError
from .exposure import build_viewpoint_matrix, build_viewpoint_network, matrix_to_csv_text
from .ingest import iter_tweet_records, load_corpus
from .labels import LABELS
from .metrics import (
    REASON_TOO_FEW_USERS,
    REASON_ZERO_EXPOSURE,
    FragmentationScorer,
    RepresentationScorer,
    score_histogram,
)
from .synth import GeneratorConfig, generate_jsonl_lines
from .validation import check_bin_width

logger = logging.getLogger(__name__)

VARIANT_WITH_L1 = "with_l1"
VARIANT_WITHOUT_L1 = "without_l1"
VARIANT_BOTH = "both"


@dataclass(slots=True)
class RunConfig:
    """Configuration of one analyze/stats run."""

    topic: str
    tweets_path: str
    output_dir: str
    labels_path: str | None = None
    max_tweets_per_conversation: int = 50
    min_authors: int = 2
    bin_width: float = 0.05
    variants: str = VARIANT_BOTH
    include_self_replies_in_dyadic: bool = True
    dump_trees: str | None = None
    dump_matrices: str | None = None


def _variant_list(variants: str) -> list[str]:
    if variants == VARIANT_BOTH:
        return [VARIANT_WITH_L1, VARIANT_WITHOUT_L1]
    if variants in (VARIANT_WITH_L1, VARIANT_WITHOUT_L1):
        return [variants]
    raise ConfigError(
        f"variants must be {VARIANT_BOTH!r}, {VARIANT_WITH_L1!r} or "
        f"{VARIANT_WITHOUT_L1!r}, got {variants!r}"
    )


def _fnum(value: float | None) -> str:
    """CSV cell for a float: shortest round-trip form, empty for missing."""
    if value is None:
        return ""
    return repr(float(value))


def _edge(value: float) -> str:
    return f"{value:.10g}"


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _stats_csv(topic: str, stats: CorpusStats) -> str:
    header = ["topic", "n_conversations", "n_tweets", "n_edges", "n_users"] + [
        f"share_{label.name}" for label in LABELS
    ]
    row = [
        topic,
        str(stats.n_conversations),
        str(stats.n_tweets),
        str(stats.n_edges),
        str(stats.n_users),
    ] + [_fnum(stats.label_shares.get(label)) for label in LABELS]
    return _csv_text(header, [row])


def _hist_rows(variant: str, metric: str, hist) -> list[list[str]]:
    rows = []
    for (lower, upper), count, share in zip(hist.bin_edges(), hist.counts, hist.shares):
        rows.append([variant, metric, _edge(lower), _edge(upper), str(count), _fnum(share)])
    return rows


def _write_text_atomic(path: Path, text: str) -> None:
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def _safe_name(value: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]", "_", value)


def _prepare_trees(config: RunConfig):
    """Shared front half of analyze and stats: ingest, build, cap, filter."""
    corpus = load_corpus(config.tweets_path, config.labels_path, topic=config.topic)
    built, reconstruction = build_conversations(corpus)
    capped = [cap_size(tree, config.max_tweets_per_conversation) for tree in built]
    n_capped = 0
    n_dropped_by_cap = 0
    for before, after in zip(built, capped):
        if after.n_nodes < before.n_nodes:
            n_capped += 1
            n_dropped_by_cap += before.n_nodes - after.n_nodes
    eligible = filter_eligible(capped, min_nodes=2, min_authors=config.min_authors)
    filtering = {
        "n_conversations_reconstructed": len(built),
        "n_conversations_capped": n_capped,
        "n_tweets_dropped_by_cap": n_dropped_by_cap,
        "n_conversations_ineligible": len(capped) - len(eligible),
        "n_conversations_eligible": len(eligible),
    }
    diagnostics = {
        "topic": config.topic,
        "ingest": corpus.diagnostics,
        "reconstruction": {
            "n_groups": reconstruction.n_groups,
            "n_discarded_components": reconstruction.n_discarded_components,
            "n_discarded_tweets": reconstruction.n_discarded_tweets,
        },
        "filtering": filtering,
        "provenance": corpus.provenance,
    }
    return eligible, diagnostics


def run_analyze(config: RunConfig) -> dict:
    """Execute the full analysis and write the report set.

    Returns a small summary dict (also useful for tests): eligible
    conversation count and the list of files written.
    """
    variants = _variant_list(config.variants)
    bin_width = check_bin_width(config.bin_width)
    eligible, diagnostics = _prepare_trees(config)
    diagnostics["run_config"] = {
        "max_tweets_per_conversation": config.max_tweets_per_conversation,
        "min_authors": config.min_authors,
        "bin_width": bin_width,
        "variants": variants,
        "include_self_replies_in_dyadic": config.include_self_replies_in_dyadic,
    }

    frag_rows: list[list[str]] = []
    rep_rows: list[list[str]] = []
    frag_hist_rows: list[list[str]] = []
    rep_hist_rows: list[list[str]] = []
    metrics_diag: dict[str, dict] = {}
    for variant in variants:
        exclude_l1 = variant == VARIANT_WITHOUT_L1
        frag = FragmentationScorer(exclude_l1=exclude_l1).fit(eligible).transform(eligible)
        rep = RepresentationScorer(exclude_l1=exclude_l1).fit_transform(eligible)

        for record in frag:
            frag_rows.append(
                [
                    config.topic,
                    record.conversation_id,
                    record.author_id,
                    _fnum(record.score),
                    "true" if record.defined else "false",
                    variant,
                ]
            )
        for record in rep:
            rep_rows.append(
                [
                    config.topic,
                    record.conversation_id,
                    _fnum(record.raw_kl),
                    _fnum(record.score),
                    variant,
                ]
            )
        frag_hist = score_histogram(
            [r.score for r in frag if r.defined], bin_width=bin_width
        )
        rep_hist = score_histogram(
            [r.score for r in rep if r.defined], bin_width=bin_width
        )
        frag_hist_rows.extend(_hist_rows(variant, "fragmentation", frag_hist))
        rep_hist_rows.extend(_hist_rows(variant, "representation", rep_hist))
        metrics_diag[variant] = {
            "n_fragmentation_defined": sum(1 for r in frag if r.defined),
            "n_users_zero_exposure": sum(
                1 for r in frag if r.reason == REASON_ZERO_EXPOSURE
            ),
            "n_users_too_few_peers": sum(
                1 for r in frag if r.reason == REASON_TOO_FEW_USERS
            ),
            "n_representation_defined": sum(1 for r in rep if r.defined),
            "n_representation_undefined": sum(1 for r in rep if not r.defined),
        }
    diagnostics["metrics"] = metrics_diag

    dyadic = DyadicInteractions(
        include_self_replies=config.include_self_replies_in_dyadic
    ).fit(eligible)

    files = {
        "stats.csv": _stats_csv(config.topic, corpus_stats(eligible)),
        "fragmentation.csv": _csv_text(
            ["topic", "conversation_id", "author_id", "score", "defined", "variant"],
            frag_rows,
        ),
        "fragmentation_hist.csv": _csv_text(
            ["variant", "metric", "bin_lower", "bin_upper", "count", "share"],
            frag_hist_rows,
        ),
        "representation.csv": _csv_text(
            ["topic", "conversation_id", "raw_kl", "score", "variant"], rep_rows
        ),
        "representation_hist.csv": _csv_text(
            ["variant", "metric", "bin_lower", "bin_upper", "count", "share"],
            rep_hist_rows,
        ),
        "dyadic.json": json.dumps(dyadic.result_.to_dict(), indent=2) + "\n",
        "diagnostics.json": json.dumps(diagnostics, indent=2) + "\n",
    }

    output_dir = Path(config.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    for name in sorted(files):
        _write_text_atomic(output_dir / name, files[name])

    if config.dump_trees is not None:
        lines = [json.dumps(tree_to_dict(tree), ensure_ascii=False) for tree in eligible]
        text = "\n".join(lines) + ("\n" if lines else "")
        _write_text_atomic(Path(config.dump_trees), text)
    if config.dump_matrices is not None:
        matrix_dir = Path(config.dump_matrices)
        matrix_dir.mkdir(parents=True, exist_ok=True)
        for i, tree in enumerate(eligible):
            matrix = build_viewpoint_matrix(build_viewpoint_network(tree))
            name = f"matrix_{i:06d}_{_safe_name(tree.conversation_id)}.csv"
            _write_text_atomic(matrix_dir / name, matrix_to_csv_text(matrix))

    logger.info(
        "analyze %s",
        json.dumps({"topic": config.topic, "n_eligible": len(eligible)}, sort_keys=True),
    )
    return {
        "output_dir": str(output_dir),
        "n_eligible_conversations": len(eligible),
        "files": sorted(files),
    }


def run_stats(config: RunConfig) -> dict:
    """Execute only the structural-statistics half and write stats.csv."""
    eligible, _ = _prepare_trees(config)
    text = _stats_csv(config.topic, corpus_stats(eligible))
    output_dir = Path(config.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    _write_text_atomic(output_dir / "stats.csv", text)
    return {
        "output_dir": str(output_dir),
        "n_eligible_conversations": len(eligible),
        "files": ["stats.csv"],
    }


def run_synth(config_path: str | Path, out_path: str | Path) -> dict:
    """Generate a corpus file and return its realized summary."""
    config = GeneratorConfig.from_json_file(config_path)
    lines = list(generate_jsonl_lines(config))

    conversations: set[str] = set()
    label_counts = {label: 0 for label in LABELS}
    n_tweets = 0
    for record, _ in iter_tweet_records(lines, source="<generated>"):
        conversations.add(record.conversation_id)
        label_counts[record.label] += 1
        n_tweets += 1

    out_path = Path(out_path)
    if out_path.parent != Path(""):
        out_path.parent.mkdir(parents=True, exist_ok=True)
    text = "\n".join(lines) + ("\n" if lines else "")
    _write_text_atomic(out_path, text)

    shares = (
        {label.name: label_counts[label] / n_tweets for label in LABELS}
        if n_tweets
        else {}
    )
    return {
        "n_conversations": len(conversations),
        "n_tweets": n_tweets,
        "label_shares": shares,
        "out_path": str(out_path),
    }
