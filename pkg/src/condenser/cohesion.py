"""Corpus cohesiveness via an Average Relative Proximity (ARP) score.

The score here is a reconstruction: sentences are grouped into consecutive
segments, each segment becomes a TF-IDF vector (fit per document), and

    ARP = 1 - mean(cos(segment_k, segment_k+1))

Lower values mean adjacent passages share more vocabulary, i.e. a more
cohesive document.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import EmptyCorpus
from .text_core import TokenizedDocument
from .vectorize import cosine_similarity, fit_tfidf_tokens

ARP_LABEL = "ARP (reconstructed)"


@dataclass(frozen=True)
class CohesionReport:
    per_document_arp: list[float]
    corpus_mean_arp: float
    normalized_arp: float = 0.0
    too_short: list[str] = field(default_factory=list)
    label: str = ARP_LABEL

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "per_document_arp": self.per_document_arp,
            "corpus_mean_arp": self.corpus_mean_arp,
            "normalized_arp": self.normalized_arp,
            "too_short": self.too_short,
        }


def segment_tokens(doc: TokenizedDocument, segment_len: int = 2) -> list[list[str]]:
    segments = []
    for start in range(0, doc.num_sentences, segment_len):
        chunk = doc.sentences[start : start + segment_len]
        segments.append([tok for s in chunk for tok in s.tokens])
    return segments


def is_scorable(doc: TokenizedDocument, segment_len: int = 2) -> bool:
    return doc.num_sentences >= 2 * segment_len


def arp_score(doc: TokenizedDocument, segment_len: int = 2) -> float:
    """ARP of one document; 0.0 when it has fewer than two full segments."""
    if segment_len < 1:
        raise ValueError("segment_len must be >= 1")
    if not is_scorable(doc, segment_len):
        return 0.0
    rows = fit_tfidf_tokens(segment_tokens(doc, segment_len)).rows
    sims = [cosine_similarity(rows[k], rows[k + 1]) for k in range(len(rows) - 1)]
    return float(min(1.0, max(0.0, 1.0 - float(np.mean(sims)))))


def corpus_cohesion(corpus: Sequence[TokenizedDocument], segment_len: int = 2) -> CohesionReport:
    if not corpus:
        raise EmptyCorpus("cannot score an empty corpus")
    scores = [arp_score(doc, segment_len) for doc in corpus]
    short = [doc.id for doc in corpus if not is_scorable(doc, segment_len)]
    return CohesionReport(scores, float(np.mean(scores)), 0.0, short)


def compare_corpora(
    corpora: Mapping[str, Sequence[TokenizedDocument]], segment_len: int = 2
) -> dict[str, CohesionReport]:
    """Score several corpora and min-max normalise their mean ARP."""
    reports = {name: corpus_cohesion(docs, segment_len) for name, docs in corpora.items()}
    means = [r.corpus_mean_arp for r in reports.values()]
    lo, hi = min(means), max(means)
    out = {}
    for name, r in reports.items():
        norm = 0.0 if hi == lo else (r.corpus_mean_arp - lo) / (hi - lo)
        out[name] = CohesionReport(r.per_document_arp, r.corpus_mean_arp, norm, r.too_short)
    return out
