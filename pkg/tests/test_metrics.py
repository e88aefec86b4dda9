import math
import random
import warnings

import pytest
from hypothesis import given, strategies as st

from condenser.errors import NoValidPairs
from condenser.evaluation.metrics import (
    TooFewRuns,
    accuracy_within,
    categorization_accuracy,
    competition_rank,
    confidence_interval,
    macro_f1,
    mae,
    mse,
)


def mse_loop(pairs):
    total, count = 0.0, 0
    for p, y in pairs:
        if p is None:
            continue
        total += (p - y) * (p - y)
        count += 1
    return total / count


def mae_loop(pairs):
    total, count = 0.0, 0
    for p, y in pairs:
        if p is None:
            continue
        total += abs(p - y)
        count += 1
    return total / count


def f1_loop(pairs, categories):
    scores = []
    for c in categories:
        tp = fp = fn = 0
        for p, y in pairs:
            if p == c and y == c:
                tp += 1
            elif p == c:
                fp += 1
            elif y == c:
                fn += 1
        prec = tp / (tp + fp) if tp + fp else 0.0
        rec = tp / (tp + fn) if tp + fn else 0.0
        scores.append(2 * prec * rec / (prec + rec) if prec + rec else 0.0)
    return sum(scores) / len(scores)


class TestRegression:
    def test_perfect(self):
        pairs = [(70, 70), (20, 20)]
        assert mse(pairs) == 0 and mae(pairs) == 0

    def test_hand_example(self):
        pairs = [(70, 80), (50, 40)]
        assert mse(pairs) == 100 and mae(pairs) == 10

    def test_fixture_of_twenty_matches_loop(self):
        rng = random.Random(20)
        pairs = [(rng.randint(1, 100), rng.randint(1, 100)) for _ in range(20)]
        assert mse(pairs) == mse_loop(pairs)
        assert mae(pairs) == mae_loop(pairs)

    def test_failures_excluded(self):
        assert mse([(None, 10), (12, 10)]) == 4

    def test_no_valid_pairs(self):
        with pytest.raises(NoValidPairs):
            mse([(None, 5)])
        with pytest.raises(NoValidPairs):
            accuracy_within([])


class TestAccuracyWithin:
    def test_boundaries(self):
        assert accuracy_within([(65, 70)]) == 100.0
        assert accuracy_within([(75, 70)]) == 100.0
        assert accuracy_within([(76, 70)]) == 0.0
        assert accuracy_within([(64, 70)]) == 0.0

    def test_all_exact(self):
        assert accuracy_within([(i, i) for i in range(1, 30)]) == 100.0

    def test_failures_excluded_from_denominator(self):
        assert accuracy_within([(70, 70), (None, 70)]) == 100.0


class TestCategorization:
    def test_perfect(self):
        cats = ["a", "b", "c"]
        assert macro_f1([(c, c) for c in cats], cats) == 1.0

    def test_confusion_matrix_example(self):
        # rows = true class: a -> [a, b], b -> [b, b]
        pairs = [("a", "a"), ("b", "a"), ("b", "b"), ("b", "b")]
        assert macro_f1(pairs, ["a", "b"]) == pytest.approx((2 / 3 + 4 / 5) / 2, abs=1e-12)
        assert macro_f1(pairs, ["a", "b"]) == pytest.approx(0.7333333333333333, abs=1e-12)

    def test_single_class_predictions(self):
        pairs = [("a", "a"), ("a", "a"), ("a", "b"), ("a", "b")]
        assert macro_f1(pairs, ["a", "b"]) == pytest.approx(1 / 3, abs=1e-12)

    def test_absent_class_scores_zero(self):
        assert macro_f1([("a", "a")], ["a", "b"]) == 0.5

    def test_parse_failures_hurt_recall_only(self):
        pairs = [("a", "a"), (None, "a"), ("b", "b")]
        # a: tp1 fn1 -> 2/3 ; b: tp1 -> 1
        assert macro_f1(pairs, ["a", "b"]) == pytest.approx((2 / 3 + 1) / 2)
        assert categorization_accuracy(pairs) == pytest.approx(200 / 3)

    @given(
        st.lists(
            st.tuples(st.sampled_from(["a", "b", "c", None]), st.sampled_from(["a", "b", "c"])),
            min_size=1,
            max_size=15,
        ).filter(lambda ps: any(p is not None for p, _ in ps))
    )
    def test_matches_loop_oracle(self, pairs):
        assert macro_f1(pairs, ["a", "b", "c"]) == pytest.approx(f1_loop(pairs, ["a", "b", "c"]), abs=1e-12)
        correct = sum(1 for p, y in pairs if p == y)
        assert categorization_accuracy(pairs) == pytest.approx(100 * correct / len(pairs))


def t_quantile_df1(p):
    return math.tan(math.pi * (p - 0.5))


def t_quantile_df2(p):
    return (2 * p - 1) / math.sqrt(2 * p * (1 - p))


class TestConfidenceInterval:
    def test_identical_values(self):
        assert confidence_interval([3.0, 3.0, 3.0]) == (3.0, 0.0)

    def test_two_values_closed_form(self):
        mean, half = confidence_interval([0.0, 10.0], 0.85)
        assert mean == 5.0
        # sd = sqrt(50), sd / sqrt(2) = 5
        assert half == pytest.approx(t_quantile_df1(0.925) * 5.0, rel=1e-9)
        assert half == pytest.approx(20.826494, rel=1e-6)

    def test_three_values_closed_form(self):
        mean, half = confidence_interval([1.0, 2.0, 6.0], 0.9)
        sd = math.sqrt(((1 - 3) ** 2 + (2 - 3) ** 2 + (6 - 3) ** 2) / 2)
        assert half == pytest.approx(t_quantile_df2(0.95) * sd / math.sqrt(3), rel=1e-9)

    def test_wider_at_higher_level(self):
        data = [1.0, 4.0, 2.0, 8.0, 5.0]
        assert confidence_interval(data, 0.95)[1] > confidence_interval(data, 0.85)[1]

    def test_single_value_flagged(self):
        with pytest.warns(TooFewRuns):
            assert confidence_interval([4.0]) == (4.0, 0.0)

    def test_bad_level(self):
        with pytest.raises(ValueError):
            confidence_interval([1.0, 2.0], 1.0)


class TestCompetitionRank:
    def test_lower_better(self):
        assert competition_rank([10, 20]) == [1, 2]

    def test_ties_share_better_rank(self):
        assert competition_rank([5, 5]) == [1, 1]
        assert competition_rank([0.82, 1.27, 0.82, 1.33]) == [1, 3, 1, 4]
        assert competition_rank([0.31, 0.30, 0.31, 0.27], higher_is_better=True) == [1, 3, 1, 4]

    def test_none_unranked(self):
        assert competition_rank([None, 2.0, 1.0]) == [None, 2, 1]

    @given(st.lists(st.integers(0, 5), min_size=1, max_size=12), st.booleans())
    def test_valid_rank_vector(self, values, higher):
        ranks = competition_rank(values, higher)
        assert min(ranks) == 1 and max(ranks) <= len(values)
        for v, r in zip(values, ranks):
            better = sum(1 for o in values if (o > v if higher else o < v))
            assert r == better + 1
