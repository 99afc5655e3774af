"""
Social and Activity Graphs
Directed follow graph with deterministic neighbour order, plus the daily
consumer -> creator activity multigraph
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import pandas as pd

from ..data.records import Document
from ..exceptions import DataError, GraphParseError, UnknownNodeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SocialGraph:
    """Directed social graph; immutable after construction"""
    nodes: Tuple[str, ...]
    out_edges: Mapping[str, Tuple[str, ...]]
    _node_set: frozenset = field(default=frozenset(), repr=False, compare=False)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Tuple[str, str]],
        nodes: Optional[Iterable[str]] = None
    ) -> 'SocialGraph':
        """
        Build a graph from (src, dst) pairs

        Args:
            edges: Directed edges; duplicates collapse, self-loops are rejected
            nodes: Optional explicit node set. When given, every edge endpoint
                must belong to it and extra ids become isolated nodes.

        Returns:
            SocialGraph
        """
        explicit = set(nodes) if nodes is not None else None
        adjacency: Dict[str, set] = {}

        for src, dst in edges:
            if src == dst:
                raise DataError(f"self-loop on '{src}'")
            if explicit is not None:
                for endpoint in (src, dst):
                    if endpoint not in explicit:
                        raise UnknownNodeError(endpoint, f"edge {src}->{dst}")
            adjacency.setdefault(src, set()).add(dst)
            adjacency.setdefault(dst, set())

        if explicit is not None:
            for node in explicit:
                adjacency.setdefault(node, set())

        ordered = tuple(sorted(adjacency))
        out_edges = {node: tuple(sorted(adjacency[node])) for node in ordered}
        return cls(nodes=ordered, out_edges=out_edges, _node_set=frozenset(ordered))

    def __contains__(self, node: str) -> bool:
        return node in self._node_set

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return sum(len(targets) for targets in self.out_edges.values())

    def edges(self) -> List[Tuple[str, str]]:
        """All edges in (src, dst) order"""
        return [(src, dst) for src in self.nodes for dst in self.out_edges[src]]

    def with_nodes(self, extra: Iterable[str]) -> 'SocialGraph':
        """Copy of the graph with additional isolated nodes"""
        return SocialGraph.from_edges(self.edges(), nodes=set(self.nodes) | set(extra))


@dataclass(frozen=True)
class ActivityGraph:
    """One day's consumer -> creator edges, one per positive log"""
    day: int
    edges: Tuple[Tuple[str, str], ...]

    def __len__(self) -> int:
        return len(self.edges)


def load_social_graph(
    path: Union[str, Path],
    known_nodes: Optional[Iterable[str]] = None
) -> SocialGraph:
    """
    Load a graph.tsv edge file (``src<TAB>dst`` per line)

    Args:
        path: Edge file
        known_nodes: Optional node universe; edges touching other ids are rejected

    Returns:
        SocialGraph with sorted neighbour lists
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"graph file not found: {path}")

    edges: List[Tuple[str, str]] = []
    with open(path, 'r', encoding='utf-8') as f:
        for line_number, raw in enumerate(f, start=1):
            line = raw.rstrip('\n').rstrip('\r')
            if not line.strip() or line.startswith('#'):
                continue
            parts = line.split('\t')
            if len(parts) != 2 or not all(parts) or any(p != p.strip() or ' ' in p for p in parts):
                raise GraphParseError(str(path), line_number, f"expected 'src<TAB>dst', got {line!r}")
            src, dst = parts
            if src == dst:
                raise GraphParseError(str(path), line_number, f"self-loop on '{src}'")
            edges.append((src, dst))

    graph = SocialGraph.from_edges(edges, nodes=known_nodes)
    logger.info(f"Loaded social graph from {path}: {len(graph)} nodes, {graph.edge_count} edges")
    return graph


def neighbors(g: SocialGraph, u: str) -> List[str]:
    """
    Out-neighbours of u, ascending by user id

    Args:
        g: Social graph
        u: User id

    Returns:
        Sorted neighbour list (possibly empty)
    """
    if u not in g:
        raise UnknownNodeError(u)
    return list(g.out_edges[u])


def build_activity_graph(
    logs: pd.DataFrame,
    docs: Mapping[str, Document],
    day: Optional[int] = None
) -> ActivityGraph:
    """
    Build the day's consumer -> creator multigraph

    Args:
        logs: Positive logs with columns user, doc_id, day
        docs: Document metadata by id
        day: Day index; taken from the logs when omitted

    Returns:
        ActivityGraph with one edge per log row, in log order
    """
    if day is None:
        days = logs['day'].unique() if len(logs) else []
        if len(days) > 1:
            raise DataError(f"activity graph needs a single day, got days {sorted(days)}")
        day = int(days[0]) if len(days) else 0

    edges = []
    for user, doc_id in zip(logs['user'], logs['doc_id']):
        document = docs.get(doc_id)
        if document is None:
            raise DataError(f"log references unknown document id '{doc_id}'")
        edges.append((user, document.author))

    return ActivityGraph(day=int(day), edges=tuple(edges))
