"""Seeded synthetic conversation corpora with controlled label dynamics.

Each conversation grows node by node: a root gets a label from the root
label distribution, then every new tweet picks a parent with probability
proportional to (1 + replies already received) ** attachment, an author
(the parent's author with probability ``self_reply_prob``, otherwise a
uniformly drawn different member of the conversation's author pool) and a
label drawn from the reply kernel column of its parent's label.

The first reply is always drawn cross-author so every generated
conversation has at least two authors and passes the downstream
eligibility filter; all later replies follow the self-reply coin.

Output is JSONL in the exact ingestion schema, so generated corpora run
through the same parsing and reconstruction code as collected ones. All
randomness comes from one sequential ``random.Random(seed)`` stream, and
the order of draws (size; root author, root label; then per reply: parent,
author, label) is part of the determinism contract: the same config and
seed always produce byte-identical output.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .errors import ConfigError, ParseError
from .ingest import Corpus, _corpus_from_lines
from .labels import LABELS
from .validation import (
    check_probability_vector,
    check_stochastic_kernel,
    check_unit_interval,
)

ONE_PER_TWEET = "one-per-tweet"

_LABEL_NAMES = tuple(label.name for label in LABELS)


@dataclass(frozen=True, slots=True)
class SizeDistribution:
    """Distribution over conversation sizes, always supported on sizes >= 2.

    Kinds: ``fixed`` (always n), ``geometric`` (1 plus a geometric draw
    with success probability p, so p=1 pins the size at 2) and ``uniform``
    (integers from lo to hi inclusive).
    """

    kind: str
    n: int | None = None
    p: float | None = None
    lo: int | None = None
    hi: int | None = None

    @classmethod
    def from_dict(cls, obj: dict) -> "SizeDistribution":
        if not isinstance(obj, dict):
            raise ConfigError(f"size_distribution must be an object, got {type(obj).__name__}")
        kind = obj.get("kind")
        if kind == "fixed":
            _check_keys(obj, {"kind", "n"}, "size_distribution")
            n = _check_count(obj.get("n"), "size_distribution.n", minimum=2)
            return cls(kind="fixed", n=n)
        if kind == "geometric":
            _check_keys(obj, {"kind", "p"}, "size_distribution")
            p = obj.get("p")
            if not isinstance(p, (int, float)) or not 0.0 < float(p) <= 1.0:
                raise ConfigError(f"size_distribution.p must lie in (0, 1], got {p!r}")
            return cls(kind="geometric", p=float(p))
        if kind == "uniform":
            _check_keys(obj, {"kind", "lo", "hi"}, "size_distribution")
            lo = _check_count(obj.get("lo"), "size_distribution.lo", minimum=2)
            hi = _check_count(obj.get("hi"), "size_distribution.hi", minimum=lo)
            return cls(kind="uniform", lo=lo, hi=hi)
        raise ConfigError(
            f"size_distribution.kind must be fixed, geometric or uniform, got {kind!r}"
        )

    def draw(self, rng: random.Random) -> int:
        if self.kind == "fixed":
            return self.n
        if self.kind == "uniform":
            return rng.randint(self.lo, self.hi)
        if self.p >= 1.0:
            return 2
        # inverse-CDF geometric on {1, 2, ...}, shifted up by one
        u = rng.random()
        return 2 + int(math.log(1.0 - u) / math.log(1.0 - self.p))


@dataclass(frozen=True, slots=True)
class GeneratorConfig:
    n_conversations: int
    size_distribution: SizeDistribution
    attachment: float
    n_authors_per_conversation: int | str
    root_label_distribution: tuple[float, float, float, float]
    reply_kernel: tuple[tuple[float, ...], ...]
    self_reply_prob: float
    seed: int

    @classmethod
    def from_dict(cls, obj: dict) -> "GeneratorConfig":
        if not isinstance(obj, dict):
            raise ConfigError(f"generator config must be an object, got {type(obj).__name__}")
        _check_keys(
            obj,
            {
                "n_conversations",
                "size_distribution",
                "attachment",
                "n_authors_per_conversation",
                "root_label_distribution",
                "reply_kernel",
                "self_reply_prob",
                "seed",
            },
            "generator config",
            required=True,
        )
        n_conversations = _check_count(obj["n_conversations"], "n_conversations", minimum=0)
        size_distribution = SizeDistribution.from_dict(obj["size_distribution"])
        attachment = obj["attachment"]
        if not isinstance(attachment, (int, float)) or not (
            math.isfinite(float(attachment)) and float(attachment) >= 0.0
        ):
            raise ConfigError(f"attachment must be a finite number >= 0, got {attachment!r}")
        authors = obj["n_authors_per_conversation"]
        if authors == ONE_PER_TWEET:
            pass
        elif isinstance(authors, int) and not isinstance(authors, bool):
            if authors < 2:
                raise ConfigError(
                    f"n_authors_per_conversation must be >= 2, got {authors}"
                )
        else:
            raise ConfigError(
                "n_authors_per_conversation must be an integer >= 2 "
                f"or {ONE_PER_TWEET!r}, got {authors!r}"
            )
        root = check_probability_vector(
            obj["root_label_distribution"], size=4, name="root_label_distribution"
        )
        kernel = check_stochastic_kernel(obj["reply_kernel"], size=4, name="reply_kernel")
        self_reply_prob = check_unit_interval(obj["self_reply_prob"], "self_reply_prob")
        if self_reply_prob >= 1.0:
            raise ConfigError("self_reply_prob must be strictly below 1")
        if authors == ONE_PER_TWEET and self_reply_prob > 0.0:
            raise ConfigError(
                "self_reply_prob must be 0 when every tweet has its own author"
            )
        seed = obj["seed"]
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ConfigError(f"seed must be an integer, got {seed!r}")
        return cls(
            n_conversations=n_conversations,
            size_distribution=size_distribution,
            attachment=float(attachment),
            n_authors_per_conversation=authors,
            root_label_distribution=root,
            reply_kernel=kernel,
            self_reply_prob=self_reply_prob,
            seed=seed,
        )

    @classmethod
    def from_json_file(cls, path: str | Path) -> "GeneratorConfig":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read generator config {path}: {exc}") from exc
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON ({exc.msg})") from exc
        return cls.from_dict(obj)


def _check_keys(obj: dict, allowed: set[str], name: str, required: bool = False) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"{name} has unknown fields: {', '.join(unknown)}")
    if required:
        missing = sorted(allowed - set(obj))
        if missing:
            raise ConfigError(f"{name} is missing fields: {', '.join(missing)}")


def _check_count(value, name: str, minimum: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ConfigError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return value


def generate_jsonl_lines(config: GeneratorConfig) -> Iterator[str]:
    """Yield the corpus as JSONL lines, one tweet per line."""
    rng = random.Random(config.seed)
    # kernel is stored row-major as Q[child][parent]; sampling needs columns
    kernel_columns = [
        [config.reply_kernel[i][j] for i in range(4)] for j in range(4)
    ]
    root_weights = list(config.root_label_distribution)
    alpha = config.attachment
    pool_size = (
        config.n_authors_per_conversation
        if config.n_authors_per_conversation != ONE_PER_TWEET
        else None
    )

    for c in range(config.n_conversations):
        conversation_id = f"c{c:06d}"
        size = config.size_distribution.draw(rng)
        labels = [0] * size
        author_of = [0] * size
        in_degree = [0] * size

        if pool_size is None:
            author_of[0] = 0
        else:
            author_of[0] = rng.randrange(pool_size)
        labels[0] = rng.choices(range(4), weights=root_weights)[0]
        yield _tweet_line(conversation_id, 0, author_of[0], None, labels[0])

        for j in range(1, size):
            weights = [(1 + in_degree[x]) ** alpha for x in range(j)]
            parent = rng.choices(range(j), weights=weights)[0]
            in_degree[parent] += 1

            if pool_size is None:
                author_of[j] = j
            else:
                parent_author = author_of[parent]
                if j == 1:
                    author_of[j] = _other_author(rng, pool_size, parent_author)
                elif rng.random() < config.self_reply_prob:
                    author_of[j] = parent_author
                else:
                    author_of[j] = _other_author(rng, pool_size, parent_author)

            labels[j] = rng.choices(range(4), weights=kernel_columns[labels[parent]])[0]
            yield _tweet_line(conversation_id, j, author_of[j], parent, labels[j])


def _other_author(rng: random.Random, pool_size: int, excluded: int) -> int:
    drawn = rng.randrange(pool_size - 1)
    return drawn + 1 if drawn >= excluded else drawn


def _tweet_line(
    conversation_id: str, node: int, author: int, parent: int | None, label: int
) -> str:
    obj = {
        "id": f"{conversation_id}_t{node:05d}",
        "author_id": f"{conversation_id}_u{author:05d}",
        "conversation_id": conversation_id,
    }
    if parent is not None:
        obj["replied_to"] = f"{conversation_id}_t{parent:05d}"
    obj["label"] = _LABEL_NAMES[label]
    return json.dumps(obj)


def generate_corpus(config: GeneratorConfig, topic: str = "synthetic") -> Corpus:
    """Generate and ingest a corpus in one step.

    The lines go through the ordinary parsing path, so the result is
    exactly what ``load_corpus`` would return for the emitted file.
    """
    provenance = {
        "generator_seed": config.seed,
        "n_conversations": config.n_conversations,
    }
    return _corpus_from_lines(
        generate_jsonl_lines(config), "<generated>", None, topic, provenance
    )
