"""
PageRank
Damped power iteration on a sparse row-stochastic matrix; serves both the static
social graph (SPR) and the daily activity graph (DPR)
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

import numpy as np
import scipy.sparse as sp

from ..exceptions import ConvergenceError, UnknownNodeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PageRankConfig:
    """Power-iteration settings"""
    damping: float = 0.85
    tolerance: float = 1e-8
    max_iters: int = 200

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValueError(f"damping must lie strictly inside (0, 1), got {self.damping}")
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be positive, got {self.max_iters}")


def pagerank(
    edges: Iterable[Tuple[str, str]],
    nodes: Iterable[str],
    cfg: PageRankConfig = PageRankConfig()
) -> Dict[str, float]:
    """
    PageRank over a directed edge multiset

    Repeated edges raise the transition probability along that edge. Rank held
    by nodes without out-edges is spread uniformly over all nodes.

    Args:
        edges: (src, dst) pairs; both endpoints must be in ``nodes``
        nodes: Non-empty node set
        cfg: Damping, tolerance (L1 change between iterates) and iteration cap

    Returns:
        Mapping node -> score; scores are non-negative and sum to 1
    """
    ordered = sorted(set(nodes))
    if not ordered:
        raise ValueError("pagerank needs a non-empty node set")

    n = len(ordered)
    index = {node: i for i, node in enumerate(ordered)}

    rows, cols = [], []
    for src, dst in edges:
        if src not in index:
            raise UnknownNodeError(src, "pagerank edge source")
        if dst not in index:
            raise UnknownNodeError(dst, "pagerank edge target")
        rows.append(index[src])
        cols.append(index[dst])

    # Duplicate (row, col) entries are summed by the COO -> CSR conversion
    counts = sp.coo_matrix(
        (
            np.ones(len(rows), dtype=np.float64),
            (np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64))
        ),
        shape=(n, n)
    ).tocsr()
    out_weight = np.asarray(counts.sum(axis=1)).ravel()
    dangling = out_weight == 0
    scale = np.zeros(n)
    scale[~dangling] = 1.0 / out_weight[~dangling]
    # Transposed once so each step is a plain sparse matvec
    transition_t = (sp.diags(scale) @ counts).T.tocsr()

    x = np.full(n, 1.0 / n)
    residual = np.inf
    for iteration in range(1, cfg.max_iters + 1):
        previous = x
        dangling_mass = previous[dangling].sum()
        x = cfg.damping * (transition_t @ previous + dangling_mass / n) + (1.0 - cfg.damping) / n
        x = x / x.sum()
        residual = float(np.abs(x - previous).sum())
        if residual < cfg.tolerance:
            logger.debug(f"PageRank converged after {iteration} iterations on {n} nodes")
            return {node: float(x[i]) for i, node in enumerate(ordered)}

    raise ConvergenceError(residual, cfg.max_iters)
