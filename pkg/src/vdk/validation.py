"""Input validation helpers shared across the package."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import ConfigError, ValidationError

_PROB_TOL = 1e-9


def check_probability_vector(
    values: Sequence[float], size: int | None = None, name: str = "distribution"
) -> tuple[float, ...]:
    """Validate a vector of probabilities that must sum to one.

    Returns the values as a tuple of floats. Raises ConfigError on negative
    entries, non-finite entries, a bad length, or a sum off by more than a
    small tolerance.
    """
    try:
        vec = tuple(float(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name} must be a sequence of numbers") from exc
    if size is not None and len(vec) != size:
        raise ConfigError(f"{name} must have length {size}, got {len(vec)}")
    for v in vec:
        if not math.isfinite(v) or v < 0.0:
            raise ConfigError(f"{name} entries must be finite and nonnegative, got {v!r}")
    total = sum(vec)
    if abs(total - 1.0) > _PROB_TOL:
        raise ConfigError(f"{name} must sum to 1, got {total!r}")
    return vec


def check_stochastic_kernel(
    rows: Sequence[Sequence[float]], size: int = 4, name: str = "reply_kernel"
) -> tuple[tuple[float, ...], ...]:
    """Validate a column-stochastic square matrix given row-major.

    Entry [i][j] is read as P(child state i | parent state j), so every
    column must sum to one.
    """
    if len(rows) != size:
        raise ConfigError(f"{name} must have {size} rows, got {len(rows)}")
    matrix = []
    for i, row in enumerate(rows):
        try:
            vec = tuple(float(v) for v in row)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{name} row {i} must be a sequence of numbers") from exc
        if len(vec) != size:
            raise ConfigError(f"{name} row {i} must have length {size}, got {len(vec)}")
        for v in vec:
            if not math.isfinite(v) or v < 0.0:
                raise ConfigError(f"{name} entries must be finite and nonnegative, got {v!r}")
        matrix.append(vec)
    for j in range(size):
        total = sum(matrix[i][j] for i in range(size))
        if abs(total - 1.0) > _PROB_TOL:
            raise ConfigError(f"{name} column {j} must sum to 1, got {total!r}")
    return tuple(matrix)


def check_bin_width(width: float) -> float:
    width = float(width)
    if not math.isfinite(width) or not 0.0 < width <= 1.0:
        raise ConfigError(f"bin width must lie in (0, 1], got {width!r}")
    return width


def check_unit_interval(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise ConfigError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def check_trees(X: Iterable) -> list:
    """Materialize and type-check a collection of conversation trees.

    Estimators accept any iterable; this pins down the common failure of
    passing a single tree or raw records instead of a collection of trees.
    """
    from .conversations import ConversationTree

    if isinstance(X, ConversationTree):
        raise ValidationError("expected a collection of conversation trees, got a single tree")
    trees = list(X)
    for item in trees:
        if not isinstance(item, ConversationTree):
            raise ValidationError(
                f"expected conversation trees, got {type(item).__name__!r}"
            )
    return trees


def parse_bool(text: str) -> bool:
    lowered = str(text).strip().lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ConfigError(f"expected a boolean flag value, got {text!r}")
