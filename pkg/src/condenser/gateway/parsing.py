"""Mapping raw model responses to predictions.

Both parsers either return a prediction or raise a :class:`ParseFailure`
subclass; nothing else escapes.
"""

from __future__ import annotations

import re
from typing import Sequence

from ..errors import NoInteger, NoMatch, OutOfRange

_INT_RE = re.compile(r"[-+]?[0-9]+")


def parse_sentiment(response_text: str) -> int:
    m = _INT_RE.search(response_text or "")
    if m is None:
        raise NoInteger(response_text or "")
    value = int(m.group(0))
    if not 1 <= value <= 100:
        raise OutOfRange(response_text, f"out_of_range: {value} not in [1, 100]")
    return value


def parse_category(response_text: str, categories: Sequence[str]) -> str:
    """Earliest whole-word, case-insensitive category mention in the response.

    When two names match at the same position the longer one wins.
    """
    text = response_text or ""
    best: tuple[int, int, str] | None = None
    for cat in categories:
        pattern = r"(?<!\w)" + re.escape(cat) + r"(?!\w)"
        m = re.search(pattern, text, flags=re.IGNORECASE)
        if m is None:
            continue
        key = (m.start(), -len(cat), cat)
        if best is None or key < best:
            best = key
    if best is None:
        raise NoMatch(text)
    return best[2]
