"""Simulation Module"""
from .dataset import Dataset, load_dataset, DATASET_FILES
from .samples import build_day_samples, split_train_valid, positives_by_user
from .simulator import Simulator, RunState, LeakageAudit
from .synthetic import generate_synthetic, PLANTED_FILE

__all__ = [
    'Dataset', 'load_dataset', 'DATASET_FILES',
    'build_day_samples', 'split_train_valid', 'positives_by_user',
    'Simulator', 'RunState', 'LeakageAudit',
    'generate_synthetic', 'PLANTED_FILE'
]
