"""
Dataset Directory
Loads and cross-validates graph.tsv, docs.jsonl, logs.tsv, payouts.tsv and embeddings.txt
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Union

import pandas as pd

from ..data import Document, load_documents, load_logs, load_payouts
from ..exceptions import DataError
from ..graph import SocialGraph, load_social_graph
from ..text import EmbeddingTable, load_embeddings
from ..utils import hash_files

logger = logging.getLogger(__name__)

GRAPH_FILE = 'graph.tsv'
DOCS_FILE = 'docs.jsonl'
LOGS_FILE = 'logs.tsv'
PAYOUTS_FILE = 'payouts.tsv'
EMBEDDINGS_FILE = 'embeddings.txt'
DATASET_FILES = [GRAPH_FILE, DOCS_FILE, LOGS_FILE, PAYOUTS_FILE, EMBEDDINGS_FILE]


@dataclass
class Dataset:
    """Every input of a simulation run"""
    root: Path
    graph: SocialGraph
    docs: Dict[str, Document]
    logs: pd.DataFrame
    embeddings: EmbeddingTable
    payouts: Optional[pd.DataFrame] = None

    @property
    def days(self) -> List[int]:
        """Days with at least one positive log, ascending"""
        return sorted(int(d) for d in self.logs['day'].unique())

    def logs_on(self, day: int) -> pd.DataFrame:
        return self.logs[self.logs['day'] == day]

    def fingerprint(self) -> str:
        """SHA-256 over the dataset files"""
        return hash_files(self.root / name for name in DATASET_FILES)


def load_dataset(directory: Union[str, Path]) -> Dataset:
    """
    Load a dataset directory and check its cross references

    Log users, document authors and payout recipients missing from graph.tsv
    join the graph as isolated nodes.

    Args:
        directory: Dataset directory

    Returns:
        Dataset
    """
    root = Path(directory)
    if not root.is_dir():
        raise DataError(f"dataset directory not found: {root}")

    graph = load_social_graph(root / GRAPH_FILE)
    docs = load_documents(root / DOCS_FILE)
    logs = load_logs(root / LOGS_FILE)
    embeddings = load_embeddings(root / EMBEDDINGS_FILE)
    payouts = load_payouts(root / PAYOUTS_FILE) if (root / PAYOUTS_FILE).exists() else None

    unknown_docs = sorted(set(logs['doc_id']) - set(docs))
    if unknown_docs:
        raise DataError(f"logs reference unknown document ids: {unknown_docs[:10]}")

    published = logs['doc_id'].map(lambda doc_id: docs[doc_id].day)
    early = logs[logs['day'] < published]
    if not early.empty:
        row = early.iloc[0]
        raise DataError(
            f"log of '{row['user']}' on day {row['day']} precedes publication of '{row['doc_id']}'"
        )

    extra = set(logs['user']) | {doc.author for doc in docs.values()}
    if payouts is not None:
        extra |= set(payouts['user'])
    missing = extra - set(graph.nodes)
    if missing:
        logger.info(f"Adding {len(missing)} users without follow edges as isolated nodes")
        graph = graph.with_nodes(missing)

    dataset = Dataset(root=root, graph=graph, docs=docs, logs=logs, embeddings=embeddings, payouts=payouts)
    logger.info(
        f"Dataset {root}: {len(graph)} users, {len(docs)} documents, {len(logs)} logs "
        f"over {len(dataset.days)} days, payouts={'yes' if payouts is not None else 'no'}"
    )
    return dataset
