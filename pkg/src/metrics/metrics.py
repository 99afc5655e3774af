"""
Evaluation Metrics
Consumer accuracy (AUC, F1), creator equality (Gini) and their trade-off (C&C)
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Union

import numpy as np
import pandas as pd
from sklearn.metrics import f1_score, roc_auc_score

from ..data import Document
from ..exceptions import DataError

logger = logging.getLogger(__name__)

LOG_COLUMNS = ['user', 'doc', 'score', 'label', 'day']
DEFAULT_THRESHOLD = 0.5


class PredictionLog:
    """Scored (user, doc, day) entries with their true labels"""

    def __init__(self, frame: Optional[pd.DataFrame] = None):
        """
        Initialize from a DataFrame with columns user, doc, score, label, day

        Args:
            frame: Entries; None for an empty log
        """
        if frame is None:
            frame = pd.DataFrame(columns=LOG_COLUMNS)
        missing = [c for c in LOG_COLUMNS if c not in frame.columns]
        if missing:
            raise DataError(f"prediction log is missing columns {missing}")

        frame = frame[LOG_COLUMNS].astype({'user': str, 'doc': str, 'score': float, 'label': int, 'day': int})
        scores = frame['score'].to_numpy()
        if not np.all(np.isfinite(scores)):
            raise DataError("prediction log contains non-finite scores")
        if not frame['label'].isin([0, 1]).all():
            raise DataError("prediction log labels must be 0 or 1")
        if frame.duplicated(subset=['user', 'doc', 'day']).any():
            raise DataError("prediction log has more than one entry per (user, doc, day)")
        self.frame = frame.reset_index(drop=True)

    @classmethod
    def from_entries(cls, entries: Iterable[Sequence]) -> 'PredictionLog':
        """Build from (user, doc, score, label, day) tuples"""
        return cls(pd.DataFrame(list(entries), columns=LOG_COLUMNS))

    @classmethod
    def read_csv(cls, path: Union[str, Path]) -> 'PredictionLog':
        path = Path(path)
        if not path.exists():
            raise DataError(f"prediction log not found: {path}")
        frame = pd.read_csv(path, dtype={'user': str, 'doc': str})
        return cls(frame)

    def to_csv(self, path: Union[str, Path]):
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        self.frame.to_csv(path, index=False, float_format='%.17g')

    def for_day(self, day: int) -> 'PredictionLog':
        return PredictionLog(self.frame[self.frame['day'] == day])

    def days(self) -> List[int]:
        return sorted(int(d) for d in self.frame['day'].unique())

    @property
    def scores(self) -> np.ndarray:
        return self.frame['score'].to_numpy(dtype=np.float64)

    @property
    def labels(self) -> np.ndarray:
        return self.frame['label'].to_numpy(dtype=np.int64)

    def __len__(self) -> int:
        return len(self.frame)


@dataclass(frozen=True)
class ImpressionDistribution:
    """Impressions credited to each creator"""
    counts: Mapping[str, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def values(self) -> List[int]:
        return [self.counts[c] for c in sorted(self.counts)]


@dataclass(frozen=True)
class DayMetrics:
    """Metrics of one test day (or the period average when day is 'avg')"""
    day: Union[int, str]
    auc: Optional[float]
    f1: float
    gini: float
    cc: float
    n_samples: float


def gini(values: Sequence[float]) -> float:
    """
    Gini coefficient: sum_i (2i - n - 1) x_(i) / (n sum x), ascending order

    Args:
        values: Non-negative values

    Returns:
        Gini in [0, 1); 0 when all values are zero
    """
    x = np.sort(np.asarray(values, dtype=np.float64))
    if x.size == 0:
        raise ValueError("gini needs at least one value")
    if x[0] < 0:
        raise ValueError(f"gini is undefined for negative values (found {x[0]})")
    total = x.sum()
    if total == 0:
        return 0.0
    n = x.size
    ranks = np.arange(1, n + 1)
    return float(np.sum((2 * ranks - n - 1) * x) / (n * total))


def auc(log: PredictionLog) -> Optional[float]:
    """
    ROC AUC (ties count one half)

    Args:
        log: Prediction log

    Returns:
        AUC, or None when the log holds a single class
    """
    labels = log.labels
    if labels.size == 0 or labels.min() == labels.max():
        return None
    return float(roc_auc_score(labels, log.scores))


def f1(log: PredictionLog, threshold: float = DEFAULT_THRESHOLD) -> float:
    """
    F1 of the decisions score >= threshold

    Args:
        log: Prediction log
        threshold: Decision threshold in (0, 1)

    Returns:
        F1; 0 when precision + recall is 0
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    if len(log) == 0:
        return 0.0
    predicted = (log.scores >= threshold).astype(np.int64)
    return float(f1_score(log.labels, predicted, zero_division=0))


def creator_impressions(log: PredictionLog, docs: Mapping[str, Document],
                        threshold: float = DEFAULT_THRESHOLD,
                        creators: Optional[Iterable[str]] = None) -> ImpressionDistribution:
    """
    Count positive-decision recommendations per document author

    Args:
        log: Prediction log
        docs: Document metadata
        threshold: Decision threshold
        creators: Active creator set (zero counts included); defaults to
            the authors of every document in the log

    Returns:
        ImpressionDistribution
    """
    doc_ids = log.frame['doc'].tolist()
    dangling = sorted({d for d in doc_ids if d not in docs})
    if dangling:
        raise DataError(f"prediction log references unknown documents: {dangling[:5]}")

    authors = [docs[d].author for d in doc_ids]
    counts: Dict[str, int] = {c: 0 for c in (creators if creators is not None else authors)}
    for author, score in zip(authors, log.scores):
        if score >= threshold:
            counts[author] = counts.get(author, 0) + 1
    return ImpressionDistribution(counts=counts)


def cc(f1_value: float, gini_value: float) -> float:
    """
    Harmonic mean of F1 and 1 - Gini

    Args:
        f1_value: F1 in [0, 1]
        gini_value: Gini in [0, 1]

    Returns:
        C&C; 0 when both terms are 0
    """
    equality = 1.0 - gini_value
    denominator = equality + f1_value
    if denominator == 0:
        return 0.0
    return 2.0 * equality * f1_value / denominator


def day_metrics(day: int, log: PredictionLog, docs: Mapping[str, Document],
                threshold: float = DEFAULT_THRESHOLD) -> DayMetrics:
    """
    Every metric for one test day

    Args:
        day: Test day
        log: Entries of that day
        docs: Document metadata
        threshold: Decision threshold

    Returns:
        DayMetrics
    """
    day_auc = auc(log)
    if day_auc is None:
        logger.warning(f"Day {day}: single-class test log, AUC undefined")
    day_f1 = f1(log, threshold)
    impressions = creator_impressions(log, docs, threshold)
    day_gini = gini(impressions.values()) if impressions.counts else 0.0
    return DayMetrics(
        day=day, auc=day_auc, f1=day_f1, gini=day_gini,
        cc=cc(day_f1, day_gini), n_samples=len(log)
    )


def aggregate_period(rows: Sequence[DayMetrics]) -> DayMetrics:
    """
    Period averages of the daily metrics (AUC over the days where it is defined)

    Args:
        rows: Daily metrics

    Returns:
        DayMetrics with day 'avg'
    """
    if not rows:
        return DayMetrics(day='avg', auc=None, f1=0.0, gini=0.0, cc=0.0, n_samples=0.0)
    defined = [r.auc for r in rows if r.auc is not None]
    return DayMetrics(
        day='avg',
        auc=float(np.mean(defined)) if defined else None,
        f1=float(np.mean([r.f1 for r in rows])),
        gini=float(np.mean([r.gini for r in rows])),
        cc=float(np.mean([r.cc for r in rows])),
        n_samples=float(np.mean([r.n_samples for r in rows]))
    )
