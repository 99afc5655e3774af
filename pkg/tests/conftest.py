"""
Shared fixtures: small graphs, a tiny embedding table and a tiny synthetic dataset
"""

import logging
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.graph import SocialGraph
from src.settings import RunConfig, SyntheticSpec
from src.simulation import generate_synthetic
from src.text import EmbeddingTable

QUIET_LOGGING = {'level': 'WARNING', 'file_path': None, 'console_output': False}


@pytest.fixture(autouse=True)
def _restore_root_handlers():
    """CLI commands reconfigure the root logger; undo that after each test"""
    root = logging.getLogger()
    before = list(root.handlers)
    level = root.level
    yield
    for handler in list(root.handlers):
        if handler not in before:
            root.removeHandler(handler)
            handler.close()
    for handler in before:
        if handler not in root.handlers:
            root.addHandler(handler)
    root.setLevel(level)


@pytest.fixture
def star_graph():
    """Hub 'h' pointing at five leaves; every leaf points back at the hub"""
    leaves = [f"l{i}" for i in range(5)]
    edges = [('h', leaf) for leaf in leaves] + [(leaf, 'h') for leaf in leaves]
    return SocialGraph.from_edges(edges)


@pytest.fixture
def diamond_graph():
    """a -> b, a -> c, b -> d, c -> d, d -> a, plus an isolated user z"""
    edges = [('a', 'b'), ('a', 'c'), ('b', 'd'), ('c', 'd'), ('d', 'a')]
    return SocialGraph.from_edges(edges, nodes=['a', 'b', 'c', 'd', 'z'])


@pytest.fixture
def tiny_embeddings():
    rng = np.random.default_rng(7)
    words = ['apple', 'banana', 'cherry', 'delta', 'echo', 'fox']
    return EmbeddingTable.from_dict({w: rng.normal(size=4) for w in words})


@pytest.fixture(scope='session')
def tiny_spec():
    return SyntheticSpec(
        seed=3, n_users=30, n_communities=2, n_days=6, docs_per_day=8,
        vocab_size=60, topic_count=4, topics_per_community=2,
        p_in=0.3, p_out=0.02, activity_rate=0.7, clicks_per_active_day=2.0,
        words_per_doc=12, embed_dim=8
    )


@pytest.fixture(scope='session')
def tiny_dataset_dir(tiny_spec, tmp_path_factory):
    """Synthetic dataset generated once per session; treat as read-only"""
    return generate_synthetic(tiny_spec, tmp_path_factory.mktemp('tiny_data'))


@pytest.fixture
def tiny_run_config():
    return RunConfig(
        seed=11, beam_width=2, depth=3, dim_hidden=8, epochs_per_day=1,
        batch_size=32, user_keywords=20, doc_keywords=10, logging=dict(QUIET_LOGGING)
    )
