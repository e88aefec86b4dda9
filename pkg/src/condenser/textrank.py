"""TextRank sentence centrality.

Edges use the overlap similarity of the original TextRank formulation,
``|Si ∩ Sj| / (ln|Si| + ln|Sj|)`` over unique non-punctuation tokens, or
optionally TF-IDF cosine. Scores are the fixed point of

    WS(i) = (1 - d) + d * sum_j  w_ji / out(j) * WS(j)

reached by power iteration from all ones. Nodes with no out-weight add
nothing and their mass is not redistributed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .text_core import TokenizedDocument, is_punct
from .vectorize import fit_tfidf, similarity_matrix

DAMPING = 0.85
TOL = 1e-4
MAX_ITER = 100

# Scores closer than this count as tied and fall back to index order.
TIE_DECIMALS = 9


@dataclass(frozen=True)
class SimilarityGraph:
    weights: np.ndarray

    @property
    def size(self) -> int:
        return self.weights.shape[0]

    def validate(self) -> None:
        w = self.weights
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("weight matrix must be square")
        if np.any(w < 0) or np.any(np.diag(w) != 0) or not np.array_equal(w, w.T):
            raise ValueError("weights must be symmetric, non-negative, zero on the diagonal")


@dataclass(frozen=True)
class CentralityScores:
    scores: np.ndarray
    converged: bool
    iterations: int


def overlap_weight(a: frozenset[str], b: frozenset[str]) -> float:
    if not a or not b:
        return 0.0
    denom = math.log(len(a)) + math.log(len(b))
    if denom <= 0:
        return 0.0
    return len(a & b) / denom


def build_graph(
    doc: TokenizedDocument, similarity: Literal["overlap", "tfidf"] = "overlap"
) -> SimilarityGraph:
    m = doc.num_sentences
    if similarity == "tfidf":
        w = similarity_matrix(fit_tfidf(doc.sentences))
        np.fill_diagonal(w, 0.0)
        return SimilarityGraph(w)
    if similarity != "overlap":
        raise ValueError(f"unknown similarity {similarity!r}")

    sets = [frozenset(t for t in s.tokens if not is_punct(t)) for s in doc.sentences]
    w = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            w[i, j] = w[j, i] = overlap_weight(sets[i], sets[j])
    return SimilarityGraph(w)


def rank(
    graph: SimilarityGraph,
    damping: float = DAMPING,
    tol: float = TOL,
    max_iter: int = MAX_ITER,
) -> CentralityScores:
    if not 0.0 < damping < 1.0:
        raise ValueError("damping must lie in (0, 1)")
    w = graph.weights
    out = w.sum(axis=1)
    # transfer[i, j] = w_ji / out_j; dangling columns stay zero
    transfer = np.divide(w, out[:, None], out=np.zeros_like(w), where=out[:, None] > 0).T

    scores = np.ones(graph.size)
    for it in range(1, max_iter + 1):
        updated = (1.0 - damping) + damping * (transfer @ scores)
        delta = float(np.max(np.abs(updated - scores))) if graph.size else 0.0
        scores = updated
        if delta < tol:
            return CentralityScores(scores, True, it)
    return CentralityScores(scores, False, max_iter)


def top_indices(values: Sequence[float], n: int) -> list[int]:
    """Indices of the ``min(n, len)`` largest values, ties to the lower index, ascending."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rounded = np.round(np.asarray(values, dtype=float), TIE_DECIMALS)
    order = sorted(range(len(rounded)), key=lambda i: (-rounded[i], i))
    return sorted(order[:n])


def top_sentences(scores: CentralityScores, n: int) -> list[int]:
    return top_indices(scores.scores, n)
