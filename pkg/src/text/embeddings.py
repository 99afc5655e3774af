"""
Pre-trained Word Embeddings
Fixed lookup table; never updated during training
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Mapping, Union

import numpy as np

from ..exceptions import DataError
from .keywords import KeywordProfile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmbeddingTable:
    """Read-only word -> vector table"""
    dim: int
    vectors: Mapping[str, np.ndarray]

    @classmethod
    def from_dict(cls, vectors: Dict[str, np.ndarray]) -> 'EmbeddingTable':
        """Build a table, freezing every vector"""
        if not vectors:
            raise DataError("embedding table is empty")
        frozen = {}
        dim = None
        for word, vector in vectors.items():
            array = np.array(vector, dtype=np.float64)
            if array.ndim != 1:
                raise DataError(f"embedding for '{word}' is not a vector")
            if dim is None:
                dim = array.shape[0]
            elif array.shape[0] != dim:
                raise DataError(f"embedding for '{word}' has length {array.shape[0]}, expected {dim}")
            array.setflags(write=False)
            frozen[word] = array
        return cls(dim=dim, vectors=frozen)

    def __contains__(self, word: str) -> bool:
        return word in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)


def load_embeddings(path: Union[str, Path]) -> EmbeddingTable:
    """
    Load embeddings.txt (``word v1 ... vD`` per line)

    An optional first line ``<vocab_size> <D>`` is recognised by having exactly
    two integer tokens.

    Args:
        path: Embedding file

    Returns:
        EmbeddingTable
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"embedding file not found: {path}")

    vectors: Dict[str, np.ndarray] = {}
    declared_dim = None
    with open(path, 'r', encoding='utf-8') as f:
        for line_number, line in enumerate(f, start=1):
            parts = line.split()
            if not parts:
                continue
            if line_number == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
                declared_dim = int(parts[1])
                continue
            if len(parts) < 2:
                raise DataError(f"{path}:{line_number}: expected 'word v1 ... vD'")
            try:
                values = np.array(parts[1:], dtype=np.float64)
            except ValueError:
                raise DataError(f"{path}:{line_number}: non-numeric vector component")
            if declared_dim is not None and values.shape[0] != declared_dim:
                raise DataError(
                    f"{path}:{line_number}: vector length {values.shape[0]} != declared {declared_dim}"
                )
            vectors[parts[0]] = values

    table = EmbeddingTable.from_dict(vectors)
    logger.info(f"Loaded {len(table)} embeddings of dimension {table.dim} from {path}")
    return table


def embed_profile(profile: KeywordProfile, table: EmbeddingTable) -> np.ndarray:
    """
    Stack the embeddings of a profile's in-vocabulary keywords

    Args:
        profile: Keyword profile
        table: Embedding table

    Returns:
        Matrix of shape (known terms, D) in profile order; shape (0, D) marks
        a cold-start profile
    """
    rows = [table.vectors[word] for word in profile.words if word in table.vectors]
    if not rows:
        if len(profile):
            logger.debug(f"All {len(profile)} keywords of '{profile.owner}' are out of vocabulary")
        return np.zeros((0, table.dim))
    return np.vstack(rows)
