"""Social Graph Module"""
from .social_graph import (
    SocialGraph, ActivityGraph, load_social_graph, neighbors, build_activity_graph
)
from .pagerank import PageRankConfig, pagerank

__all__ = [
    'SocialGraph', 'ActivityGraph',
    'load_social_graph', 'neighbors', 'build_activity_graph',
    'PageRankConfig', 'pagerank'
]
