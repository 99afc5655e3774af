"""Evaluation Metrics Module"""
from .metrics import (
    PredictionLog, ImpressionDistribution, DayMetrics,
    gini, auc, f1, creator_impressions, cc, day_metrics, aggregate_period,
    DEFAULT_THRESHOLD
)

__all__ = [
    'PredictionLog', 'ImpressionDistribution', 'DayMetrics',
    'gini', 'auc', 'f1', 'creator_impressions', 'cc', 'day_metrics', 'aggregate_period',
    'DEFAULT_THRESHOLD'
]
