"""Prediction metrics, Student-t intervals and competition ranking.

A pair is ``(prediction, label)``; a prediction of ``None`` marks a parse
failure. Regression metrics and within-tolerance accuracy skip failures.
Categorization accuracy and macro F1 count them as wrong answers.
"""

from __future__ import annotations

import math
import warnings
from typing import Hashable, Optional, Sequence, Tuple

from scipy import stats

from ..errors import NoValidPairs

Pair = Tuple[Optional[Hashable], Hashable]

# A prediction within this many points of the gold score counts as correct.
ACCURACY_TOLERANCE = 5


class TooFewRuns(UserWarning):
    """Raised as a warning when an interval is requested for a single value."""


def _parsed(pairs: Sequence[Pair]) -> list[tuple[float, float]]:
    valid = [(p, y) for p, y in pairs if p is not None]
    if not valid:
        raise NoValidPairs("no successfully parsed predictions")
    return valid


def mse(pairs: Sequence[Pair]) -> float:
    valid = _parsed(pairs)
    return sum((p - y) ** 2 for p, y in valid) / len(valid)


def mae(pairs: Sequence[Pair]) -> float:
    valid = _parsed(pairs)
    return sum(abs(p - y) for p, y in valid) / len(valid)


def accuracy_within(pairs: Sequence[Pair], tol: float = ACCURACY_TOLERANCE) -> float:
    """Percent of parsed predictions with ``|pred - label| <= tol``."""
    valid = _parsed(pairs)
    return 100.0 * sum(abs(p - y) <= tol for p, y in valid) / len(valid)


def categorization_accuracy(pairs: Sequence[Pair]) -> float:
    """Percent of all attempts predicted correctly; parse failures count as wrong."""
    if not pairs:
        raise NoValidPairs("no predictions")
    return 100.0 * sum(p is not None and p == y for p, y in pairs) / len(pairs)


def macro_f1(pairs: Sequence[Pair], categories: Sequence[Hashable]) -> float:
    """Unweighted mean of per-class F1 over every corpus category.

    Parse failures hurt recall of the true class without adding a false
    positive to any real class. Classes never seen in labels or
    predictions score 0.
    """
    if not any(p is not None for p, _ in pairs):
        raise NoValidPairs("no successfully parsed predictions")
    total = 0.0
    for c in categories:
        tp = sum(1 for p, y in pairs if p == c and y == c)
        fp = sum(1 for p, y in pairs if p == c and y != c)
        fn = sum(1 for p, y in pairs if y == c and p != c)
        denom = 2 * tp + fp + fn
        total += 2 * tp / denom if denom else 0.0
    return total / len(categories)


def confidence_interval(values: Sequence[float], level: float = 0.85) -> tuple[float, float]:
    """Student-t interval on the mean, returned as ``(mean, half_width)``."""
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie in (0, 1)")
    n = len(values)
    if n == 0:
        raise ValueError("no values")
    mean = math.fsum(values) / n
    if n == 1:
        warnings.warn("a single run has no spread; half-width set to 0", TooFewRuns, stacklevel=2)
        return mean, 0.0
    if min(values) == max(values):
        return float(values[0]), 0.0
    sd = math.sqrt(math.fsum((v - mean) ** 2 for v in values) / (n - 1))
    t = float(stats.t.ppf((1.0 + level) / 2.0, df=n - 1))
    return mean, t * sd / math.sqrt(n)


def competition_rank(values: Sequence[Optional[float]], higher_is_better: bool = False) -> list[Optional[int]]:
    """1-based ranks where ties share the better rank ("1, 1, 3").

    ``None`` values are left unranked.
    """
    present = [v for v in values if v is not None]
    ranks: list[Optional[int]] = []
    for v in values:
        if v is None:
            ranks.append(None)
            continue
        better = sum(1 for o in present if (o > v if higher_is_better else o < v))
        ranks.append(better + 1)
    return ranks
