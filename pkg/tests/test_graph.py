"""
Tests for the social graph, activity graph and PageRank
"""

import networkx as nx
import numpy as np
import pandas as pd
import pytest

from src.data import Document, load_logs
from src.exceptions import ConvergenceError, DataError, GraphParseError, UnknownNodeError
from src.graph import (
    PageRankConfig, SocialGraph, build_activity_graph, load_social_graph, neighbors, pagerank
)


def dense_pagerank(edges, nodes, damping=0.85, iterations=500):
    """Textbook dense power iteration with uniform dangling redistribution"""
    order = sorted(nodes)
    index = {n: i for i, n in enumerate(order)}
    n = len(order)
    counts = np.zeros((n, n))
    for src, dst in edges:
        counts[index[src], index[dst]] += 1.0
    x = np.full(n, 1.0 / n)
    for _ in range(iterations):
        nxt = np.full(n, (1.0 - damping) / n)
        for i in range(n):
            out = counts[i].sum()
            if out == 0:
                nxt += damping * x[i] / n
            else:
                nxt += damping * x[i] * counts[i] / out
        x = nxt
    return {node: x[index[node]] for node in order}


class TestSocialGraph:

    def test_neighbors_sorted_and_deduplicated(self):
        g = SocialGraph.from_edges([('a', 'c'), ('a', 'b'), ('a', 'c')])
        assert neighbors(g, 'a') == ['b', 'c']
        assert neighbors(g, 'b') == []
        assert g.edge_count == 2

    def test_unknown_user(self, diamond_graph):
        with pytest.raises(UnknownNodeError) as info:
            neighbors(diamond_graph, 'nobody')
        assert info.value.node == 'nobody'

    def test_isolated_nodes_kept(self, diamond_graph):
        assert 'z' in diamond_graph
        assert neighbors(diamond_graph, 'z') == []

    def test_self_loop_rejected(self):
        with pytest.raises(DataError):
            SocialGraph.from_edges([('a', 'a')])

    def test_with_nodes(self, diamond_graph):
        bigger = diamond_graph.with_nodes(['y'])
        assert 'y' in bigger
        assert bigger.edges() == diamond_graph.edges()


class TestLoadSocialGraph:

    def test_reads_edges(self, tmp_path):
        path = tmp_path / 'graph.tsv'
        path.write_text("# follows\nb\ta\na\tb\n\na\tc\n", encoding='utf-8')
        g = load_social_graph(path)
        assert g.nodes == ('a', 'b', 'c')
        assert g.edges() == [('a', 'b'), ('a', 'c'), ('b', 'a')]

    def test_bad_line_reports_line_number(self, tmp_path):
        path = tmp_path / 'graph.tsv'
        path.write_text("a\tb\nb c\n", encoding='utf-8')
        with pytest.raises(GraphParseError) as info:
            load_social_graph(path)
        assert info.value.line_number == 2

    def test_self_loop_line(self, tmp_path):
        path = tmp_path / 'graph.tsv'
        path.write_text("a\tb\nc\tc\n", encoding='utf-8')
        with pytest.raises(GraphParseError) as info:
            load_social_graph(path)
        assert info.value.line_number == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            load_social_graph(tmp_path / 'absent.tsv')


class TestActivityGraph:

    def test_one_edge_per_log(self):
        docs = {
            'd1': Document('d1', 'alice', 0, 'x'),
            'd2': Document('d2', 'alice', 0, 'y'),
            'd3': Document('d3', 'bob', 0, 'z'),
        }
        logs = pd.DataFrame({'user': ['carol', 'carol', 'dave'], 'doc_id': ['d1', 'd2', 'd3'], 'day': [0, 0, 0]})
        activity = build_activity_graph(logs, docs)
        assert activity.day == 0
        assert list(activity.edges) == [('carol', 'alice'), ('carol', 'alice'), ('dave', 'bob')]

    def test_repeated_click_rows_count_once(self, tmp_path):
        docs = {'d1': Document('d1', 'alice', 0, 'x'), 'd2': Document('d2', 'bob', 0, 'y')}
        path = tmp_path / 'logs.tsv'
        path.write_text('carol\td1\t0\ncarol\td1\t0\ncarol\td2\t0\ncarol\td1\t0\n', encoding='utf-8')
        logs = load_logs(path)
        assert len(logs) == 2
        activity = build_activity_graph(logs, docs)
        assert list(activity.edges) == [('carol', 'alice'), ('carol', 'bob')]

    def test_unknown_document(self):
        logs = pd.DataFrame({'user': ['carol'], 'doc_id': ['missing'], 'day': [0]})
        with pytest.raises(DataError):
            build_activity_graph(logs, {})

    def test_mixed_days_rejected(self):
        docs = {'d1': Document('d1', 'alice', 0, 'x')}
        logs = pd.DataFrame({'user': ['carol', 'dave'], 'doc_id': ['d1', 'd1'], 'day': [0, 1]})
        with pytest.raises(DataError):
            build_activity_graph(logs, docs)


class TestPageRank:

    def test_matches_dense_oracle_with_multi_edges(self):
        edges = [('a', 'b'), ('a', 'b'), ('a', 'c'), ('b', 'c'), ('c', 'a'), ('d', 'c')]
        nodes = ['a', 'b', 'c', 'd', 'e']
        scores = pagerank(edges, nodes, PageRankConfig(tolerance=1e-12, max_iters=1000))
        expected = dense_pagerank(edges, nodes)
        for node in nodes:
            assert scores[node] == pytest.approx(expected[node], abs=1e-9)
        assert sum(scores.values()) == pytest.approx(1.0, abs=1e-12)

    def test_matches_networkx_on_random_graphs(self):
        for seed in range(5):
            graph = nx.gnp_random_graph(25, 0.15, seed=seed, directed=True)
            nodes = [f"n{i:02d}" for i in graph.nodes]
            edges = [(f"n{a:02d}", f"n{b:02d}") for a, b in graph.edges]
            scores = pagerank(edges, nodes, PageRankConfig(tolerance=1e-12, max_iters=1000))
            reference = nx.pagerank(graph, alpha=0.85, tol=1e-13, max_iter=1000)
            for i in graph.nodes:
                assert scores[f"n{i:02d}"] == pytest.approx(reference[i], abs=1e-8)

    def test_relabelling_nodes_relabels_scores(self):
        graph = nx.gnp_random_graph(30, 0.1, seed=11, directed=True)
        nodes = [f"n{i:02d}" for i in graph.nodes]
        edges = [(f"n{a:02d}", f"n{b:02d}") for a, b in graph.edges]
        shuffled = np.random.default_rng(11).permutation(len(nodes))
        rename = {node: f"m{int(k):02d}" for node, k in zip(nodes, shuffled)}
        cfg = PageRankConfig(tolerance=1e-12, max_iters=1000)
        scores = pagerank(edges, nodes, cfg)
        renamed = pagerank([(rename[a], rename[b]) for a, b in edges], [rename[n] for n in nodes], cfg)
        for node in nodes:
            assert renamed[rename[node]] == pytest.approx(scores[node], abs=1e-9)

    def test_edgeless_graph_is_uniform(self):
        scores = pagerank([], ['a', 'b', 'c', 'd'])
        assert all(value == pytest.approx(0.25) for value in scores.values())

    def test_non_convergence(self):
        with pytest.raises(ConvergenceError) as info:
            pagerank([('a', 'b'), ('b', 'c')], ['a', 'b', 'c'],
                     PageRankConfig(tolerance=1e-15, max_iters=1))
        assert info.value.iterations == 1
        assert info.value.residual > 0

    def test_edge_outside_node_set(self):
        with pytest.raises(UnknownNodeError):
            pagerank([('a', 'x')], ['a', 'b'])

    def test_invalid_config(self):
        with pytest.raises(ValueError):
            PageRankConfig(damping=1.0)
