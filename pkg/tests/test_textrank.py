import math
import random

import numpy as np
import pytest

from condenser.text_core import document_from_text
from condenser.textrank import SimilarityGraph, build_graph, rank, top_indices, top_sentences
from oracles import overlap_weight_oracle, random_weight_matrix, textrank_fixed_point

EIGHT_SENTENCES = (
    "The combat system is deep and the combat feels great. "
    "Combat upgrades unlock new combat moves over time. "
    "The story is thin. "
    "Music is forgettable. "
    "Deep combat and great upgrades carry the game. "
    "Graphics look dated on older hardware. "
    "The game is great fun despite the thin story. "
    "Boss fights are the best part of the combat."
)


class TestBuildGraph:
    def test_identical_four_token_sentences(self):
        g = build_graph(document_from_text("red blue green gold. red blue green gold."))
        # 4 / (2 ln 4) = 1 / ln 2
        assert g.weights[0, 1] == pytest.approx(1.4426950408889634, rel=1e-15)
        assert g.weights[0, 1] == pytest.approx(4 / (2 * math.log(4)))

    def test_disjoint(self):
        g = build_graph(document_from_text("red blue. green gold."))
        assert g.weights[0, 1] == 0.0

    def test_single_sentence(self):
        g = build_graph(document_from_text("only one sentence here"))
        assert g.weights.shape == (1, 1) and g.weights[0, 0] == 0.0

    def test_one_token_sentences_have_zero_denominator(self):
        g = build_graph(document_from_text("Wow. Wow."))
        assert g.weights[0, 1] == 0.0

    def test_matches_oracle_and_is_valid(self):
        doc = document_from_text(EIGHT_SENTENCES)
        g = build_graph(doc)
        g.validate()
        for i, a in enumerate(doc.sentences):
            for j, b in enumerate(doc.sentences):
                if i != j:
                    assert g.weights[i, j] == pytest.approx(overlap_weight_oracle(a.tokens, b.tokens), abs=1e-15)

    def test_tfidf_option(self):
        g = build_graph(document_from_text(EIGHT_SENTENCES), similarity="tfidf")
        g.validate()
        assert (g.weights <= 1).all()


class TestRank:
    def test_single_node(self):
        s = rank(SimilarityGraph(np.zeros((1, 1))))
        assert s.converged
        assert s.scores[0] == pytest.approx(0.15, abs=1e-15)

    def test_two_node_symmetric(self):
        s = rank(SimilarityGraph(np.array([[0.0, 0.7], [0.7, 0.0]])))
        assert s.scores[0] == s.scores[1] == 1.0

    def test_random_8_node_graph_matches_fixed_point(self):
        w = random_weight_matrix(random.Random(8), 8)
        expected = textrank_fixed_point(w)
        s = rank(SimilarityGraph(np.array(w)), tol=1e-10, max_iter=10_000)
        np.testing.assert_allclose(s.scores, expected, atol=1e-6)

    def test_default_tolerance_is_close_to_fixed_point(self):
        w = random_weight_matrix(random.Random(8), 8)
        s = rank(SimilarityGraph(np.array(w)))
        assert s.converged and s.iterations <= 100
        np.testing.assert_allclose(s.scores, textrank_fixed_point(w), atol=1e-3)

    def test_nonconvergence_reported(self):
        w = random_weight_matrix(random.Random(1), 6)
        s = rank(SimilarityGraph(np.array(w)), tol=0.0, max_iter=5)
        assert not s.converged and s.iterations == 5

    def test_dangling_node_gets_floor(self):
        w = np.zeros((3, 3))
        w[0, 1] = w[1, 0] = 1.0
        s = rank(SimilarityGraph(w))
        assert s.scores[2] == pytest.approx(0.15)

    def test_lower_bound_and_permutation(self):
        rng = random.Random(5)
        for _ in range(100):
            m = rng.randint(1, 10)
            w = np.array(random_weight_matrix(rng, m))
            s = rank(SimilarityGraph(w), tol=1e-12, max_iter=10_000)
            assert (s.scores >= 0.15 - 1e-9).all() and np.isfinite(s.scores).all()
            perm = rng.sample(range(m), m)
            sp = rank(SimilarityGraph(w[np.ix_(perm, perm)]), tol=1e-12, max_iter=10_000)
            np.testing.assert_allclose(sp.scores, s.scores[perm], atol=1e-9)

    def test_complete_uniform_graph_gives_equal_scores(self):
        w = np.full((6, 6), 0.4)
        np.fill_diagonal(w, 0)
        s = rank(SimilarityGraph(w))
        np.testing.assert_allclose(s.scores, s.scores[0], atol=1e-9)

    def test_bad_damping(self):
        with pytest.raises(ValueError):
            rank(SimilarityGraph(np.zeros((1, 1))), damping=1.0)


class TestTopSentences:
    def test_n_exceeds_m(self):
        assert top_indices([0.3, 0.1, 0.2], 5) == [0, 1, 2]

    def test_tie_break_lower_index(self):
        assert top_indices([0.2, 0.9, 0.9, 0.1], 2) == [1, 2]
        assert top_indices([0.9, 0.2, 0.9, 0.9], 2) == [0, 2]

    def test_argmax_of_oracle(self):
        w = random_weight_matrix(random.Random(8), 8)
        expected = textrank_fixed_point(w)
        s = rank(SimilarityGraph(np.array(w)))
        assert top_sentences(s, 1) == [max(range(8), key=lambda i: expected[i])]

    def test_strictly_ascending(self):
        rng = random.Random(2)
        for _ in range(200):
            vals = [rng.choice([0.1, 0.5, 0.9, rng.random()]) for _ in range(rng.randint(1, 12))]
            out = top_indices(vals, rng.randint(1, 12))
            assert out == sorted(set(out))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            top_indices([1.0], 0)
