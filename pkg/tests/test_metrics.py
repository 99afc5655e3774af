"""
Tests for AUC, F1, Gini, creator impressions and C&C
"""

import numpy as np
import pandas as pd
import pytest

from src.data import Document
from src.exceptions import DataError
from src.metrics import (
    DayMetrics, PredictionLog, aggregate_period, auc, cc, creator_impressions, day_metrics, f1, gini
)

# (F1, Gini, printed C&C) in percent, English then Spanish rows of the published comparison
PUBLISHED_ROWS = [
    (42.14, 66.04, 37.71), (42.28, 65.98, 37.80), (34.50, 62.89, 35.86), (40.43, 66.42, 36.79),
    (42.85, 62.29, 40.22), (42.96, 64.00, 39.17), (47.69, 61.78, 42.43),
    (35.02, 58.13, 38.14), (35.24, 58.29, 38.20), (36.50, 55.84, 39.97), (22.37, 56.50, 29.55),
    (41.27, 53.98, 43.52), (41.04, 58.19, 41.42), (42.99, 53.99, 44.46),
]


def pairwise_gini(values):
    x = np.asarray(values, dtype=float)
    if x.sum() == 0:
        return 0.0
    return np.abs(x[:, None] - x[None, :]).sum() / (2 * x.size * x.sum())


def pairwise_auc(scores, labels):
    positives = [s for s, y in zip(scores, labels) if y == 1]
    negatives = [s for s, y in zip(scores, labels) if y == 0]
    total = 0.0
    for p in positives:
        for n in negatives:
            total += 1.0 if p > n else 0.5 if p == n else 0.0
    return total / (len(positives) * len(negatives))


def make_log(scores, labels, day=1):
    return PredictionLog.from_entries(
        (f"u{i}", f"d{i}", float(s), int(y), day) for i, (s, y) in enumerate(zip(scores, labels))
    )


class TestCC:

    def test_reference_value(self):
        assert cc(0.4296, 0.6400) == pytest.approx(0.3917, abs=0.002)

    @pytest.mark.parametrize('f1_pct,gini_pct,cc_pct', PUBLISHED_ROWS)
    def test_published_pairs(self, f1_pct, gini_pct, cc_pct):
        assert 100 * cc(f1_pct / 100, gini_pct / 100) == pytest.approx(cc_pct, abs=0.2)

    def test_degenerate(self):
        assert cc(0.0, 1.0) == 0.0
        assert cc(1.0, 0.0) == 1.0


class TestGini:

    def test_exact_values(self):
        assert gini([3, 3, 3]) == 0.0
        assert gini([0, 0, 0, 1]) == 0.75
        assert gini([0, 0]) == 0.0
        assert gini([5]) == 0.0

    def test_matches_pairwise_formula(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            values = rng.exponential(size=int(rng.integers(1, 501)))
            if rng.random() < 0.2:
                values[rng.random(values.size) < 0.5] = 0.0
            assert gini(values) == pytest.approx(pairwise_gini(values), abs=1e-9)

    def test_scale_and_order_do_not_matter(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            values = rng.exponential(size=int(rng.integers(2, 200)))
            expected = gini(values)
            assert gini(values * rng.uniform(0.01, 100.0)) == pytest.approx(expected, abs=1e-12)
            assert gini(rng.permutation(values)) == pytest.approx(expected, abs=1e-12)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            gini([1.0, -0.5])


class TestAuc:

    def test_matches_pairwise_concordance(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            n = int(rng.integers(2, 60))
            labels = rng.integers(0, 2, size=n)
            labels[0], labels[1] = 0, 1
            # coarse scores force ties
            scores = np.round(rng.random(n), 1)
            log = make_log(scores, labels)
            assert auc(log) == pytest.approx(pairwise_auc(scores, labels), abs=1e-12)

    def test_unchanged_by_increasing_transform(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            n = int(rng.integers(2, 60))
            labels = rng.integers(0, 2, size=n)
            labels[0], labels[1] = 0, 1
            scores = np.round(rng.random(n), 1)
            expected = auc(make_log(scores, labels))
            assert auc(make_log(scores ** 3, labels)) == pytest.approx(expected, abs=1e-12)
            assert auc(make_log(np.exp(4 * scores), labels)) == pytest.approx(expected, abs=1e-12)

    def test_single_class_is_undefined(self):
        assert auc(make_log([0.2, 0.9], [1, 1])) is None


class TestF1:

    def test_threshold_is_inclusive(self):
        log = make_log([0.5, 0.4, 0.9, 0.1], [1, 1, 0, 0])
        # predicted positive: 0.5 and 0.9; one true positive
        assert f1(log, 0.5) == pytest.approx(0.5)

    def test_no_positive_decisions(self):
        assert f1(make_log([0.1, 0.2], [1, 0])) == 0.0

    def test_threshold_range(self):
        with pytest.raises(ValueError):
            f1(make_log([0.1], [1]), 1.0)


class TestPredictionLog:

    def test_duplicate_entries_rejected(self):
        with pytest.raises(DataError):
            PredictionLog.from_entries([('u', 'd', 0.1, 0, 1), ('u', 'd', 0.2, 1, 1)])

    def test_non_finite_scores_rejected(self):
        with pytest.raises(DataError):
            make_log([float('nan')], [1])

    def test_csv_round_trip_is_exact(self, tmp_path):
        log = make_log([0.1 + 0.2, 1.0 / 3.0], [0, 1], day=4)
        log.to_csv(tmp_path / 'log.csv')
        again = PredictionLog.read_csv(tmp_path / 'log.csv')
        pd.testing.assert_frame_equal(log.frame, again.frame)
        assert again.days() == [4]


class TestImpressions:

    @pytest.fixture
    def docs(self):
        return {
            'd1': Document('d1', 'alice', 0, ''),
            'd2': Document('d2', 'alice', 0, ''),
            'd3': Document('d3', 'bob', 0, ''),
            'd4': Document('d4', 'carol', 0, ''),
        }

    def test_counts_per_creator(self, docs):
        log = PredictionLog.from_entries([
            ('u1', 'd1', 0.9, 1, 1), ('u2', 'd2', 0.6, 0, 1), ('u1', 'd3', 0.7, 0, 1), ('u3', 'd4', 0.2, 1, 1),
        ])
        impressions = creator_impressions(log, docs)
        assert impressions.counts == {'alice': 2, 'bob': 1, 'carol': 0}
        assert impressions.values() == [2, 1, 0]
        assert impressions.total == 3

    def test_dangling_document(self, docs):
        log = PredictionLog.from_entries([('u1', 'dx', 0.9, 1, 1)])
        with pytest.raises(DataError):
            creator_impressions(log, docs)

    def test_day_metrics(self, docs):
        log = PredictionLog.from_entries([
            ('u1', 'd1', 0.9, 1, 1), ('u1', 'd3', 0.7, 0, 1), ('u2', 'd4', 0.2, 1, 1), ('u2', 'd2', 0.1, 0, 1),
        ])
        row = day_metrics(1, log, docs)
        assert row.n_samples == 4
        assert row.f1 == pytest.approx(0.5)
        # impressions: alice 1, bob 1, carol 0
        assert row.gini == pytest.approx(pairwise_gini([1, 1, 0]))
        assert row.cc == pytest.approx(cc(row.f1, row.gini))
        assert row.auc == pytest.approx(0.75)


class TestAggregation:

    def test_auc_averaged_where_defined(self):
        rows = [
            DayMetrics(1, 0.6, 0.4, 0.5, cc(0.4, 0.5), 10),
            DayMetrics(2, None, 0.2, 0.3, cc(0.2, 0.3), 20),
        ]
        average = aggregate_period(rows)
        assert average.day == 'avg'
        assert average.auc == pytest.approx(0.6)
        assert average.f1 == pytest.approx(0.3)
        assert average.gini == pytest.approx(0.4)
        assert average.n_samples == pytest.approx(15.0)

    def test_empty_period(self):
        assert aggregate_period([]).auc is None
