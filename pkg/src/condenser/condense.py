"""The seven input-condensation scenarios and the diverse-summary pipeline."""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import InvalidParams, UnknownStrategy
from .text_core import TokenizedDocument, count_tokens
from .textrank import build_graph, rank, top_indices, top_sentences
from .vectorize import dissimilarity_matrix, fit_tfidf

SUMMARY_SEPARATOR = "---- SUMMARY ----"
SEPARATOR_VERSION = "1"

MAX_SEED = 2**64 - 1


class Strategy(str, Enum):
    FULL = "full"
    FULL_PLUS_SUMMARY = "full_plus_summary"
    FIRST_SENTENCES = "first"
    LAST_SENTENCES = "last"
    SUMMARY = "summary"
    DIVERSE_SUMMARY = "diverse"
    RANDOM_SAMPLING = "random"

    @classmethod
    def parse(cls, value: "str | Strategy") -> "Strategy":
        if isinstance(value, Strategy):
            return value
        try:
            return cls(value)
        except ValueError:
            raise UnknownStrategy(
                f"unknown strategy {value!r}; expected one of {[s.value for s in cls]}"
            ) from None

    @property
    def is_length_limited(self) -> bool:
        return self not in (Strategy.FULL, Strategy.FULL_PLUS_SUMMARY)


# Display names used in report tables.
STRATEGY_LABELS = {
    Strategy.FULL: "Full",
    Strategy.FULL_PLUS_SUMMARY: "Full+Sum.",
    Strategy.FIRST_SENTENCES: "First Sent.",
    Strategy.LAST_SENTENCES: "Last Sent.",
    Strategy.SUMMARY: "Sum.",
    Strategy.DIVERSE_SUMMARY: "Div. Sum.",
    Strategy.RANDOM_SAMPLING: "Rand. Samp.",
}


@dataclass(frozen=True)
class CondenseParams:
    n: int = 10
    seed: int = 0
    prune_keep_fraction: float = 0.5

    def validate(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise InvalidParams(f"n must be an integer >= 1, got {self.n!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or not 0 <= self.seed <= MAX_SEED:
            raise InvalidParams(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not 0.0 < self.prune_keep_fraction <= 1.0:
            raise InvalidParams(
                f"prune_keep_fraction must lie in (0, 1], got {self.prune_keep_fraction!r}"
            )


@dataclass(frozen=True)
class CondensedInput:
    strategy: Strategy
    selected: tuple[int, ...]
    text: str
    token_count: int


_SMALL_MODEL_RE = re.compile(r"mistral|llama|\b[0-9]+(\.[0-9]+)?b\b", re.IGNORECASE)


def default_n(model_id: str, task: str = "categorization") -> int:
    """Sentence budget used in the reference experiments.

    Sentiment runs used 7 for every model; categorization used 7 for the
    small open models and 10 for the hosted ones.
    """
    if task == "sentiment":
        return 7
    return 7 if _SMALL_MODEL_RE.search(model_id) else 10


def _assemble(doc: TokenizedDocument, strategy: Strategy, selected: Sequence[int]) -> CondensedInput:
    text = " ".join(doc.sentences[i].text for i in selected)
    return CondensedInput(strategy, tuple(selected), text, count_tokens(text))


def _check_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidParams(f"n must be an integer >= 1, got {n!r}")


def full_context(doc: TokenizedDocument) -> CondensedInput:
    return _assemble(doc, Strategy.FULL, range(doc.num_sentences))


def first_sentences(doc: TokenizedDocument, n: int) -> CondensedInput:
    _check_n(n)
    return _assemble(doc, Strategy.FIRST_SENTENCES, range(min(n, doc.num_sentences)))


def last_sentences(doc: TokenizedDocument, n: int) -> CondensedInput:
    _check_n(n)
    m = doc.num_sentences
    return _assemble(doc, Strategy.LAST_SENTENCES, range(max(0, m - n), m))


def sample_indices(m: int, n: int, seed: int) -> list[int]:
    """Uniform sample of ``min(n, m)`` distinct indices from ``range(m)``.

    Each index gets a SHA-256 key derived from ``(seed, index)``; the ``n``
    smallest keys win. This is a uniformly random subset that depends on
    nothing but the seed, so it never changes across Python or numpy
    versions.
    """
    seed_bytes = seed.to_bytes(8, "big")

    def key(i: int) -> bytes:
        return hashlib.sha256(seed_bytes + i.to_bytes(8, "big")).digest()

    return sorted(sorted(range(m), key=key)[:n])


def random_sample(doc: TokenizedDocument, n: int, seed: int) -> CondensedInput:
    _check_n(n)
    CondenseParams(n=n, seed=seed).validate()
    return _assemble(doc, Strategy.RANDOM_SAMPLING, sample_indices(doc.num_sentences, n, seed))


def extractive_summary(doc: TokenizedDocument, n: int) -> CondensedInput:
    _check_n(n)
    selected = top_sentences(rank(build_graph(doc)), n)
    return _assemble(doc, Strategy.SUMMARY, selected)


def diversity_scores(doc: TokenizedDocument, candidates: Sequence[int]) -> list[float]:
    """Summed dissimilarity of each candidate against the other candidates."""
    model = fit_tfidf([doc.sentences[i] for i in candidates])
    return dissimilarity_matrix(model).sum(axis=1).tolist()


def diverse_selection(doc: TokenizedDocument, n: int, prune_keep_fraction: float = 0.5) -> list[int]:
    m = doc.num_sentences
    keep = min(m, max(n, math.ceil(prune_keep_fraction * m)))
    if keep < m:
        kept = top_sentences(rank(build_graph(doc)), keep)
    else:
        kept = list(range(m))
    scores = diversity_scores(doc, kept)
    # kept is ascending, so position order is original-index order for ties
    return sorted(kept[p] for p in top_indices(scores, n))


def diverse_summary(doc: TokenizedDocument, n: int, prune_keep_fraction: float = 0.5) -> CondensedInput:
    _check_n(n)
    CondenseParams(n=n, prune_keep_fraction=prune_keep_fraction).validate()
    selected = diverse_selection(doc, n, prune_keep_fraction)
    return _assemble(doc, Strategy.DIVERSE_SUMMARY, selected)


def full_plus_summary(doc: TokenizedDocument, n: int) -> CondensedInput:
    _check_n(n)
    summary = extractive_summary(doc, n)
    text = f"{doc.text}\n{SUMMARY_SEPARATOR}\n{summary.text}"
    return CondensedInput(
        Strategy.FULL_PLUS_SUMMARY, tuple(range(doc.num_sentences)), text, count_tokens(text)
    )


def condense(
    doc: TokenizedDocument, strategy: "Strategy | str", params: CondenseParams | None = None
) -> CondensedInput:
    strategy = Strategy.parse(strategy)
    params = params or CondenseParams()
    params.validate()
    if strategy is Strategy.FULL:
        return full_context(doc)
    if strategy is Strategy.FULL_PLUS_SUMMARY:
        return full_plus_summary(doc, params.n)
    if strategy is Strategy.FIRST_SENTENCES:
        return first_sentences(doc, params.n)
    if strategy is Strategy.LAST_SENTENCES:
        return last_sentences(doc, params.n)
    if strategy is Strategy.SUMMARY:
        return extractive_summary(doc, params.n)
    if strategy is Strategy.DIVERSE_SUMMARY:
        return diverse_summary(doc, params.n, params.prune_keep_fraction)
    return random_sample(doc, params.n, params.seed)
