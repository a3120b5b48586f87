"""Corpus ingestion.

Tweets arrive as JSON Lines, one object per line, with this shape:

    {"id": "t2", "author_id": "u5", "conversation_id": "c1",
     "text": "...", "replied_to": "t1", "label": "L3"}

``id``, ``author_id`` and ``conversation_id`` are required. The reply target
may be given flat as ``replied_to`` or nested Twitter-style as
``referenced_tweets: [{"type": "replied_to", "id": "t1"}]``; the flat key
wins when both are present. ``text`` and ``label`` are optional.

Viewpoint labels come from three places, in decreasing precedence: a
separate annotations file, an inline ``label`` field, and a default of L1
(counted in the ingest diagnostics).
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ParseError, SchemaError, ValidationError
from .labels import RawAnnotation, ViewpointLabel, merge_labels

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class TweetRecord:
    """One ingested tweet."""

    tweet_id: str
    author_id: str
    conversation_id: str
    parent_id: str | None = None
    text: str | None = None
    label: ViewpointLabel = ViewpointLabel.L1


@dataclass(slots=True)
class Corpus:
    """An ingested topic corpus plus bookkeeping about how it was read."""

    topic: str
    tweets: tuple[TweetRecord, ...]
    diagnostics: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)


def _require_id(obj: dict, key: str, where: str) -> str:
    value = obj.get(key)
    if isinstance(value, int) and not isinstance(value, bool):
        value = str(value)
    if not isinstance(value, str) or not value:
        raise SchemaError(f"{where}: field {key!r} must be a non-empty string")
    return value


def _optional_id(value, key: str, where: str) -> str:
    if isinstance(value, int) and not isinstance(value, bool):
        value = str(value)
    if not isinstance(value, str) or not value:
        raise SchemaError(f"{where}: field {key!r} must be a non-empty string")
    return value


def parse_tweet_line(line: str, source: str = "<memory>", line_number: int = 0) -> TweetRecord:
    """Parse one JSONL tweet line into a TweetRecord.

    Raises ParseError for undecodable JSON and SchemaError for a decoded
    object with missing or malformed fields. Error messages name the source
    and line number.
    """
    where = f"{source}:{line_number}"
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: invalid JSON ({exc.msg})") from exc
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected a JSON object, got {type(obj).__name__}")
    return _record_from_obj(obj, where)


def _record_from_obj(obj: dict, where: str) -> TweetRecord:
    tweet_id = _require_id(obj, "id", where)
    author_id = _require_id(obj, "author_id", where)
    conversation_id = _require_id(obj, "conversation_id", where)

    parent_id = None
    if obj.get("replied_to") is not None:
        parent_id = _optional_id(obj["replied_to"], "replied_to", where)
    elif obj.get("referenced_tweets") is not None:
        refs = obj["referenced_tweets"]
        if not isinstance(refs, list):
            raise SchemaError(f"{where}: field 'referenced_tweets' must be a list")
        for ref in refs:
            if not isinstance(ref, dict):
                raise SchemaError(f"{where}: entries of 'referenced_tweets' must be objects")
            if ref.get("type") == "replied_to":
                parent_id = _optional_id(ref.get("id"), "referenced_tweets[].id", where)
                break
    if parent_id == tweet_id:
        raise ValidationError(f"{where}: tweet {tweet_id!r} replies to itself")

    text = obj.get("text")
    if text is not None and not isinstance(text, str):
        raise SchemaError(f"{where}: field 'text' must be a string when present")

    label = ViewpointLabel.L1
    if obj.get("label") is not None:
        if not isinstance(obj["label"], str):
            raise SchemaError(f"{where}: field 'label' must be a string when present")
        label = ViewpointLabel.from_name(obj["label"])

    return TweetRecord(
        tweet_id=tweet_id,
        author_id=author_id,
        conversation_id=conversation_id,
        parent_id=parent_id,
        text=text,
        label=label,
    )


def iter_tweet_records(lines: Iterable[str], source: str = "<memory>") -> Iterator[tuple[TweetRecord, bool]]:
    """Yield (record, had_inline_label) for every non-blank line."""
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        where = f"{source}:{number}"
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{where}: invalid JSON ({exc.msg})") from exc
        if not isinstance(obj, dict):
            raise SchemaError(f"{where}: expected a JSON object, got {type(obj).__name__}")
        yield _record_from_obj(obj, where), obj.get("label") is not None


def read_annotations(path: str | Path) -> dict[str, RawAnnotation]:
    """Read a labels file, either CSV or JSONL.

    CSV needs the header ``tweet_id,relevance,claim``. JSONL needs one
    object per line with the same three keys. A duplicate tweet_id is an
    error because the two rows could disagree.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read labels file {path}: {exc}") from exc

    stripped = text.lstrip()
    annotations: dict[str, RawAnnotation] = {}
    if stripped.startswith("{"):
        for number, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            where = f"{path}:{number}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"{where}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise SchemaError(f"{where}: expected a JSON object")
            tweet_id = _require_id(obj, "tweet_id", where)
            relevance = obj.get("relevance")
            claim = obj.get("claim")
            if not isinstance(relevance, str) or not isinstance(claim, str):
                raise SchemaError(f"{where}: 'relevance' and 'claim' must be strings")
            if tweet_id in annotations:
                raise ValidationError(f"{where}: duplicate annotation for tweet {tweet_id!r}")
            annotations[tweet_id] = RawAnnotation(relevance=relevance, claim=claim)
        return annotations

    reader = csv.DictReader(text.splitlines())
    expected = ["tweet_id", "relevance", "claim"]
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != expected:
        raise SchemaError(
            f"labels file {path} must start with header 'tweet_id,relevance,claim', "
            f"got {reader.fieldnames!r}"
        )
    for number, row in enumerate(reader, start=2):
        tweet_id = row.get("tweet_id") or ""
        if not tweet_id:
            raise SchemaError(f"{path}:{number}: empty tweet_id")
        if tweet_id in annotations:
            raise ValidationError(f"{path}:{number}: duplicate annotation for tweet {tweet_id!r}")
        relevance = (row.get("relevance") or "").strip()
        claim = (row.get("claim") or "").strip()
        annotations[tweet_id] = RawAnnotation(relevance=relevance, claim=claim)
    return annotations


def _corpus_from_lines(
    lines: Iterable[str],
    source: str,
    annotations: dict[str, RawAnnotation] | None,
    topic: str,
    provenance: dict,
) -> Corpus:
    records: list[TweetRecord] = []
    seen: dict[str, int] = {}
    n_inline = 0
    n_from_annotations = 0
    n_defaulted = 0
    for record, had_inline in iter_tweet_records(lines, source=source):
        if record.tweet_id in seen:
            raise ValidationError(
                f"{source}: duplicate tweet id {record.tweet_id!r} "
                f"(first seen at line {seen[record.tweet_id]})"
            )
        seen[record.tweet_id] = len(records) + 1
        if annotations is not None and record.tweet_id in annotations:
            record.label = merge_labels(annotations[record.tweet_id])
            n_from_annotations += 1
        elif had_inline:
            n_inline += 1
        else:
            record.label = ViewpointLabel.L1
            n_defaulted += 1
        records.append(record)

    n_unmatched = 0
    if annotations is not None:
        n_unmatched = sum(1 for tweet_id in annotations if tweet_id not in seen)

    diagnostics = {
        "n_tweets": len(records),
        "n_labels_from_annotations": n_from_annotations,
        "n_labels_inline": n_inline,
        "n_labels_defaulted_l1": n_defaulted,
        "n_annotation_rows": len(annotations) if annotations is not None else 0,
        "n_annotations_unmatched": n_unmatched,
    }
    corpus = Corpus(topic=topic, tweets=tuple(records), diagnostics=diagnostics, provenance=provenance)
    logger.info("ingest %s", json.dumps({"topic": topic, **diagnostics}, sort_keys=True))
    return corpus


def load_corpus(
    tweets_path: str | Path,
    labels_path: str | Path | None = None,
    topic: str = "",
) -> Corpus:
    """Load a topic corpus from a tweets JSONL file and optional labels file.

    A labels path that cannot be read is a hard error, never silently
    ignored. Tweets that end up with no label entry anywhere default to L1
    and are tallied in the corpus diagnostics.
    """
    tweets_path = Path(tweets_path)
    annotations = read_annotations(labels_path) if labels_path is not None else None
    try:
        text = tweets_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read tweets file {tweets_path}: {exc}") from exc
    provenance = {
        "tweets_path": str(tweets_path),
        "labels_path": str(labels_path) if labels_path is not None else None,
        "ingested_at": datetime.now(timezone.utc).isoformat(),
    }
    return _corpus_from_lines(
        text.splitlines(), str(tweets_path), annotations, topic, provenance
    )


def record_to_json_line(record: TweetRecord) -> str:
    obj: dict = {
        "id": record.tweet_id,
        "author_id": record.author_id,
        "conversation_id": record.conversation_id,
    }
    if record.parent_id is not None:
        obj["replied_to"] = record.parent_id
    if record.text is not None:
        obj["text"] = record.text
    obj["label"] = record.label.name
    return json.dumps(obj, ensure_ascii=False, sort_keys=False)


def write_corpus_jsonl(records: Iterable[TweetRecord], path: str | Path) -> int:
    """Write records as JSONL; returns the number of lines written.

    ``load_corpus`` on the result reproduces the records exactly.
    """
    path = Path(path)
    count = 0
    with path.open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(record_to_json_line(record))
            handle.write("\n")
            count += 1
    return count
