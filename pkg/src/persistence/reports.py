"""
Run Reports
metrics.csv and the run manifest
"""

import json
import logging
import platform
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas as pd

from .. import __version__
from ..exceptions import DataError
from ..metrics import DayMetrics

logger = logging.getLogger(__name__)

METRIC_COLUMNS = ['day', 'auc', 'f1', 'gini', 'cc', 'n_samples']


def _fmt(value: Optional[float]) -> str:
    return '' if value is None else f"{value:.6f}"


def metrics_frame(rows: Sequence[DayMetrics], average: Optional[DayMetrics] = None) -> pd.DataFrame:
    """
    Formatted metrics table, one row per test day plus an optional 'avg' row

    Args:
        rows: Daily metrics
        average: Period average row

    Returns:
        DataFrame of strings in metrics.csv layout
    """
    records = []
    for row in rows:
        records.append({
            'day': str(row.day), 'auc': _fmt(row.auc), 'f1': _fmt(row.f1),
            'gini': _fmt(row.gini), 'cc': _fmt(row.cc), 'n_samples': str(int(row.n_samples))
        })
    if average is not None:
        records.append({
            'day': 'avg', 'auc': _fmt(average.auc), 'f1': _fmt(average.f1),
            'gini': _fmt(average.gini), 'cc': _fmt(average.cc), 'n_samples': _fmt(average.n_samples)
        })
    return pd.DataFrame(records, columns=METRIC_COLUMNS)


def write_metrics(rows: Sequence[DayMetrics], path: Union[str, Path],
                  average: Optional[DayMetrics] = None):
    """
    Write metrics.csv

    Args:
        rows: Daily metrics
        path: Output file
        average: Period average row appended last
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        metrics_frame(rows, average).to_csv(path, index=False, lineterminator='\n')
    except OSError as e:
        raise DataError(f"cannot write metrics to {path} ({e})")
    logger.info(f"Wrote {len(rows)} daily metric rows to {path}")


def read_metrics(path: Union[str, Path]) -> pd.DataFrame:
    """Read metrics.csv back as strings"""
    return pd.read_csv(path, dtype=str, keep_default_na=False)


def write_manifest(path: Union[str, Path], config: Dict[str, Any], dataset_hash: str,
                   timings: List[Dict[str, Any]], extra: Optional[Dict[str, Any]] = None):
    """
    Write manifest.json describing what produced a run's outputs

    Args:
        path: Output file
        config: Resolved configuration mapping
        dataset_hash: Fingerprint of the dataset files
        timings: Per-day phase timings in seconds
        extra: Additional fields
    """
    manifest = {
        'version': __version__,
        'seed': config.get('seed'),
        'dataset_hash': dataset_hash,
        'config': config,
        'python': platform.python_version(),
        'timings': timings,
    }
    if extra:
        manifest.update(extra)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write('\n')
