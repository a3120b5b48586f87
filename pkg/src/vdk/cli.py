"""Command line interface.

Three subcommands: ``analyze`` runs the full pipeline and writes the
report set, ``stats`` writes only the structural statistics, ``synth``
generates a synthetic corpus from a JSON config. Hard errors print one
JSON line on standard error and exit nonzero. The VDK_LOG environment
variable (error, warn, info, debug) controls logging verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .errors import ConfigError, VdkError
from .report import RunConfig, run_analyze, run_stats, run_synth
from .validation import parse_bool

_LOG_LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


def _configure_logging() -> None:
    raw = os.environ.get("VDK_LOG", "warn").strip().lower()
    if raw not in _LOG_LEVELS:
        raise ConfigError(
            f"VDK_LOG must be one of {', '.join(_LOG_LEVELS)}, got {raw!r}"
        )
    logging.basicConfig(
        stream=sys.stderr,
        level=_LOG_LEVELS[raw],
        format="%(levelname)s %(name)s: %(message)s",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vdk",
        description="Viewpoint diversity analytics over reply-tree conversations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser(
        "analyze", help="run the full pipeline and write all reports"
    )
    _add_corpus_args(analyze)
    analyze.add_argument(
        "--max-size",
        type=int,
        default=50,
        metavar="N",
        help="cap conversations at N tweets (default 50)",
    )
    analyze.add_argument(
        "--min-authors",
        type=int,
        default=2,
        metavar="N",
        help="eligibility threshold on distinct authors (default 2)",
    )
    analyze.add_argument(
        "--bin-width",
        type=float,
        default=0.05,
        metavar="W",
        help="histogram bin width (default 0.05)",
    )
    analyze.add_argument(
        "--variant",
        choices=["both", "with-l1", "without-l1"],
        default="both",
        help="which metric variants to compute (default both)",
    )
    analyze.add_argument(
        "--dyadic-self-replies",
        type=parse_bool,
        default=True,
        metavar="true|false",
        help="count self-replies in the dyadic analysis (default true)",
    )
    analyze.add_argument(
        "--dump-trees",
        metavar="FILE",
        help="also write reconstructed trees as JSONL for audit",
    )
    analyze.add_argument(
        "--dump-matrices",
        metavar="DIR",
        help="also write per-conversation viewpoint matrices as CSV",
    )

    stats = sub.add_parser("stats", help="write structural statistics only")
    _add_corpus_args(stats)
    stats.add_argument("--max-size", type=int, default=50, metavar="N")
    stats.add_argument("--min-authors", type=int, default=2, metavar="N")

    synth = sub.add_parser("synth", help="generate a synthetic corpus")
    synth.add_argument("--config", required=True, metavar="FILE", help="generator config JSON")
    synth.add_argument("--out", required=True, metavar="FILE", help="output corpus JSONL")
    return parser


def _add_corpus_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--topic", required=True, help="topic tag stamped into reports")
    parser.add_argument("--tweets", required=True, metavar="FILE", help="tweets JSONL")
    parser.add_argument(
        "--labels", metavar="FILE", help="annotations file (CSV or JSONL)"
    )
    parser.add_argument("--out", required=True, metavar="DIR", help="output directory")


def main(argv: list[str] | None = None) -> int:
    try:
        _configure_logging()
        args = _build_parser().parse_args(argv)
        if args.command == "analyze":
            config = RunConfig(
                topic=args.topic,
                tweets_path=args.tweets,
                labels_path=args.labels,
                output_dir=args.out,
                max_tweets_per_conversation=args.max_size,
                min_authors=args.min_authors,
                bin_width=args.bin_width,
                variants=args.variant.replace("-", "_"),
                include_self_replies_in_dyadic=args.dyadic_self_replies,
                dump_trees=args.dump_trees,
                dump_matrices=args.dump_matrices,
            )
            run_analyze(config)
        elif args.command == "stats":
            config = RunConfig(
                topic=args.topic,
                tweets_path=args.tweets,
                labels_path=args.labels,
                output_dir=args.out,
                max_tweets_per_conversation=args.max_size,
                min_authors=args.min_authors,
            )
            run_stats(config)
        else:
            summary = run_synth(args.config, args.out)
            print(json.dumps(summary))
        return 0
    except (VdkError, OSError) as exc:
        line = json.dumps({"error": type(exc).__name__, "message": str(exc)})
        print(line, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
