"""TF-IDF sentence vectors, cosine similarity and the dissimilarity matrix.

Sentences act as the "documents" of the TF-IDF model. Weights use the raw
term count, the smoothed idf ``ln((1 + M) / (1 + df)) + 1`` and L2-normalised
rows. Punctuation tokens never enter the vocabulary.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ModelMismatch
from .text_core import Sentence, is_punct


@dataclass(frozen=True)
class TfidfModel:
    vocabulary: dict[str, int]
    idf: np.ndarray
    rows: np.ndarray  # (M, V), each non-zero row has unit L2 norm

    @property
    def num_rows(self) -> int:
        return self.rows.shape[0]

    def weight(self, row: int, term: str) -> float:
        col = self.vocabulary.get(term)
        return 0.0 if col is None else float(self.rows[row, col])


def load_stopwords(path: str | Path) -> frozenset[str]:
    words = (line.strip().lower() for line in Path(path).read_text("utf-8").splitlines())
    return frozenset(w for w in words if w and not w.startswith("#"))


def _content_terms(tokens: Iterable[str], stopwords: frozenset[str]) -> list[str]:
    return [t for t in tokens if not is_punct(t) and t not in stopwords]


def fit_tfidf_tokens(
    token_lists: Sequence[Sequence[str]], stopwords: Iterable[str] = ()
) -> TfidfModel:
    """Fit a TF-IDF model where each token list is one row."""
    if not token_lists:
        raise ValueError("need at least one row to fit TF-IDF")
    stop = frozenset(stopwords)
    counts = [Counter(_content_terms(toks, stop)) for toks in token_lists]
    vocab_terms = sorted(set().union(*counts))
    vocabulary = {t: i for i, t in enumerate(vocab_terms)}

    m = len(token_lists)
    df = np.zeros(len(vocab_terms))
    for c in counts:
        for term in c:
            df[vocabulary[term]] += 1
    idf = np.log((1.0 + m) / (1.0 + df)) + 1.0

    rows = np.zeros((m, len(vocab_terms)))
    for i, c in enumerate(counts):
        for term, tf in c.items():
            col = vocabulary[term]
            rows[i, col] = tf * idf[col]
    norms = np.linalg.norm(rows, axis=1)
    nonzero = norms > 0
    rows[nonzero] /= norms[nonzero, None]
    return TfidfModel(vocabulary, idf, rows)


def fit_tfidf(sentences: Sequence[Sentence], stopwords: Iterable[str] = ()) -> TfidfModel:
    return fit_tfidf_tokens([s.tokens for s in sentences], stopwords)


def cosine_similarity(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine of two non-negative weight vectors, 0 when either is all-zero."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ModelMismatch(f"vector shapes differ: {u.shape} vs {v.shape}")
    nu = math.sqrt(float(u @ u))
    nv = math.sqrt(float(v @ v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return min(1.0, max(0.0, float(u @ v) / (nu * nv)))


def similarity_matrix(model: TfidfModel) -> np.ndarray:
    """Pairwise cosine similarity of all rows, clipped to [0, 1]."""
    rows = model.rows
    sim = rows @ rows.T
    sim = (sim + sim.T) / 2.0
    return np.clip(sim, 0.0, 1.0)


def dissimilarity_matrix(model: TfidfModel) -> np.ndarray:
    """``1 - cos`` for every sentence pair, with a zero diagonal."""
    dis = 1.0 - similarity_matrix(model)
    np.fill_diagonal(dis, 0.0)
    return dis
