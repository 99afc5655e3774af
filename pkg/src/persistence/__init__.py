"""Persistence Module"""
from .checkpoint import (
    save_checkpoint, load_checkpoint, save_state_json, load_state_json,
    checkpoint_path, state_path, latest_checkpoint_day
)
from .reports import METRIC_COLUMNS, metrics_frame, write_metrics, read_metrics, write_manifest

__all__ = [
    'save_checkpoint', 'load_checkpoint', 'save_state_json', 'load_state_json',
    'checkpoint_path', 'state_path', 'latest_checkpoint_day',
    'METRIC_COLUMNS', 'metrics_frame', 'write_metrics', 'read_metrics', 'write_manifest'
]
