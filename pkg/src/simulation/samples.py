"""
Daily Samples
Positive responses plus friend-witnessed negatives, and the 9:1 train/validation split
"""

import logging
import math
from collections import defaultdict
from typing import Dict, List, Sequence, Set, Tuple

import pandas as pd
from sklearn.model_selection import train_test_split

from ..data import Sample
from ..graph import SocialGraph

logger = logging.getLogger(__name__)

TRAIN_SHARE = 0.9


def positives_by_user(logs: pd.DataFrame) -> Dict[str, Set[str]]:
    """Documents each user responded to"""
    positives: Dict[str, Set[str]] = defaultdict(set)
    for user, doc_id in zip(logs['user'], logs['doc_id']):
        positives[user].add(doc_id)
    return positives


def build_day_samples(day: int, logs: pd.DataFrame, graph: SocialGraph) -> List[Sample]:
    """
    Samples of one day

    Positives are the user's responses. Negatives are documents at least one
    out-neighbour responded to that day and the user did not. Users who did
    not respond themselves still receive the negatives their friends witness.

    Args:
        day: Day index
        logs: Positive logs (rows of other days are ignored)
        graph: Social graph

    Returns:
        Samples ordered by user, then positives before negatives, then doc id
    """
    positives = positives_by_user(logs[logs['day'] == day])
    samples: List[Sample] = []
    for user in sorted(set(positives) | set(graph.nodes)):
        own = positives.get(user, set())
        witnessed: Set[str] = set()
        for friend in graph.out_edges.get(user, ()):
            witnessed |= positives.get(friend, set())
        samples.extend(Sample(user, doc, day, 1) for doc in sorted(own))
        samples.extend(Sample(user, doc, day, 0) for doc in sorted(witnessed - own))
    return samples


def split_train_valid(samples: Sequence[Sample], seed: int,
                      train_share: float = TRAIN_SHARE) -> Tuple[List[Sample], List[Sample]]:
    """
    Split into training and validation parts, floor(0.9 n) for training

    Stratified by label when both classes allow it; fewer than two samples
    all go to training.

    Args:
        samples: Day samples
        seed: Split seed
        train_share: Training fraction

    Returns:
        (train, valid)
    """
    samples = list(samples)
    n = len(samples)
    if n < 2:
        return samples, []

    seed = int(seed) % (2 ** 32)
    n_valid = n - math.floor(train_share * n)
    labels = [s.label for s in samples]
    try:
        train, valid = train_test_split(samples, test_size=n_valid, stratify=labels, random_state=seed)
    except ValueError:
        train, valid = train_test_split(samples, test_size=n_valid, random_state=seed)
    return list(train), list(valid)
