"""
Synthetic Dataset Generator
Planted-community social graph with topic-driven documents, clicks and payouts
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Set, Tuple, Union

import networkx as nx
import numpy as np
import pandas as pd

from ..settings import SyntheticSpec, config_to_mapping
from .dataset import DOCS_FILE, EMBEDDINGS_FILE, GRAPH_FILE, LOGS_FILE, PAYOUTS_FILE

logger = logging.getLogger(__name__)

PLANTED_FILE = 'planted.json'


def _ids(prefix: str, count: int, min_width: int = 4) -> List[str]:
    width = max(min_width, len(str(max(count - 1, 0))))
    return [f"{prefix}{i:0{width}d}" for i in range(count)]


def _community_sizes(n_users: int, n_communities: int) -> List[int]:
    base, extra = divmod(n_users, n_communities)
    return [base + (1 if i < extra else 0) for i in range(n_communities)]


def _engagement_levels(spec: SyntheticSpec, rng: np.random.Generator) -> List[float]:
    """Per-community activity probability, evenly spread around ``activity_rate``"""
    if spec.n_communities == 1:
        offsets = np.zeros(1)
    else:
        offsets = np.linspace(-0.5, 0.5, spec.n_communities) * spec.engagement_spread
    levels = np.clip(spec.activity_rate + offsets, 0.05, 1.0)
    return [float(x) for x in levels[rng.permutation(spec.n_communities)]]


def _topic_affinity(spec: SyntheticSpec, liked: Dict[int, List[int]], community: Dict[str, int],
                    users: List[str], rng: np.random.Generator) -> Dict[str, np.ndarray]:
    """Dirichlet draw per user over the topics their community likes; zero elsewhere"""
    affinity = {}
    for user in users:
        topics = liked[community[user]]
        draw = rng.dirichlet(np.full(len(topics), spec.affinity_concentration))
        if not np.all(np.isfinite(draw)) or draw.sum() <= 0:
            # tiny concentrations can underflow every component
            draw = np.zeros(len(topics))
            draw[int(rng.integers(len(topics)))] = 1.0
        theta = np.zeros(spec.topic_count)
        theta[topics] = draw / draw.sum()
        affinity[user] = theta
    return affinity


def generate_synthetic(spec: SyntheticSpec, out_dir: Union[str, Path]) -> Path:
    """
    Write a complete dataset directory

    Users split into communities joined by a directed stochastic block model.
    Every community likes a few (possibly shared) topics, and every user
    draws a private affinity over them. Each day:

    - active users (community engagement decides who is active) click a few
      documents of topics drawn from their affinity, except for a
      ``click_noise`` share of uniformly random clicks;
    - for ``reshare_rounds`` rounds, active users see what the users they
      follow clicked in the previous round and click each such document with
      probability engagement * sqrt(affinity / max affinity).

    Authors write on topics drawn from their own affinity. The planted
    assignment is saved to planted.json.

    Args:
        spec: Generator settings
        out_dir: Destination directory (created if needed)

    Returns:
        The dataset directory
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(spec.seed)

    # Social graph
    sizes = _community_sizes(spec.n_users, spec.n_communities)
    probabilities = [
        [spec.p_in if i == j else spec.p_out for j in range(spec.n_communities)]
        for i in range(spec.n_communities)
    ]
    sbm = nx.stochastic_block_model(sizes, probabilities, seed=spec.seed % (2 ** 32), directed=True)
    users = _ids('u', spec.n_users)
    community = {users[node]: int(sbm.nodes[node]['block']) for node in sbm.nodes}
    edges = sorted((users[a], users[b]) for a, b in sbm.edges if a != b)
    follows: Dict[str, List[str]] = {user: [] for user in users}
    for src, dst in edges:
        follows[src].append(dst)

    # Topics, tastes and vocabulary
    words = _ids('w', spec.vocab_size)
    word_topic = np.arange(spec.vocab_size) % spec.topic_count
    topic_words = [np.flatnonzero(word_topic == t) for t in range(spec.topic_count)]
    liked = {
        c: sorted(int(t) for t in rng.choice(spec.topic_count, spec.topics_per_community, replace=False))
        for c in range(spec.n_communities)
    }
    engagement = _engagement_levels(spec, rng)
    affinity = _topic_affinity(spec, liked, community, users, rng)
    relative = {user: np.sqrt(theta / theta.max()) if theta.max() > 0 else theta
                for user, theta in affinity.items()}

    centroids = rng.normal(0.0, 1.0, size=(spec.topic_count, spec.embed_dim))
    vectors = centroids[word_topic] + spec.embed_noise * rng.normal(size=(spec.vocab_size, spec.embed_dim))

    # Documents, clicks and payouts, day by day
    doc_ids = _ids('d', spec.n_days * spec.docs_per_day, min_width=5)
    docs: List[Dict] = []
    doc_topic: Dict[str, int] = {}
    log_rows = []
    payout_rows = []
    for day in range(spec.n_days):
        todays: List[Tuple[str, str, int]] = []
        for k in range(spec.docs_per_day):
            doc_id = doc_ids[day * spec.docs_per_day + k]
            author = users[int(rng.integers(spec.n_users))]
            topic = int(rng.choice(spec.topic_count, p=affinity[author]))
            topical = rng.random(spec.words_per_doc) < spec.topic_word_share
            tokens = [
                words[int(rng.choice(topic_words[topic]))] if on_topic
                else words[int(rng.integers(spec.vocab_size))]
                for on_topic in topical
            ]
            docs.append({'id': doc_id, 'author': author, 'day': day, 'text': ' '.join(tokens)})
            doc_topic[doc_id] = topic
            todays.append((doc_id, author, topic))
        author_of = {doc_id: author for doc_id, author, _ in todays}

        active = [user for user in users if rng.random() < engagement[community[user]]]
        clicked: Dict[str, Set[str]] = {user: set() for user in active}
        fresh: Dict[str, Set[str]] = {}
        for user in active:
            candidates = [d for d in todays if d[1] != user]
            theta = affinity[user]
            weights = np.array([theta[d[2]] for d in candidates])
            wanted = max(1, int(rng.poisson(spec.clicks_per_active_day)))
            for _ in range(wanted):
                if not candidates:
                    break
                if rng.random() < spec.click_noise:
                    pick = int(rng.integers(len(candidates)))
                elif weights.sum() > 0:
                    pick = int(rng.choice(len(candidates), p=weights / weights.sum()))
                else:
                    continue
                clicked[user].add(candidates[pick][0])
            fresh[user] = set(clicked[user])

        # Reshare cascade along follow edges
        seen: Dict[str, Set[str]] = {user: set(clicked[user]) for user in active}
        for _ in range(spec.reshare_rounds):
            next_fresh: Dict[str, Set[str]] = {}
            for user in active:
                offered = set()
                for followee in follows[user]:
                    offered |= fresh.get(followee, set())
                offered -= seen[user]
                level = engagement[community[user]]
                for doc_id in sorted(offered):
                    seen[user].add(doc_id)
                    if author_of[doc_id] == user:
                        continue
                    if rng.random() < level * relative[user][doc_topic[doc_id]]:
                        clicked[user].add(doc_id)
                        next_fresh.setdefault(user, set()).add(doc_id)
            fresh = next_fresh
            if not fresh:
                break

        clicks_on: Dict[str, int] = {}
        for user in active:
            for doc_id in sorted(clicked[user]):
                log_rows.append((user, doc_id, day))
                clicks_on[author_of[doc_id]] = clicks_on.get(author_of[doc_id], 0) + 1

        for author in sorted(clicks_on):
            payout_rows.append((author, day, clicks_on[author] * spec.payout_per_click))

    pd.DataFrame(edges, columns=['src', 'dst']).to_csv(
        out / GRAPH_FILE, sep='\t', header=False, index=False, lineterminator='\n')
    with open(out / DOCS_FILE, 'w', encoding='utf-8') as f:
        for doc in docs:
            f.write(json.dumps(doc, sort_keys=True) + '\n')
    logs = pd.DataFrame(log_rows, columns=['user', 'doc_id', 'day']).sort_values(
        ['day', 'user', 'doc_id'], kind='mergesort')
    logs.to_csv(out / LOGS_FILE, sep='\t', header=False, index=False, lineterminator='\n')
    pd.DataFrame(payout_rows, columns=['user', 'day', 'amount']).to_csv(
        out / PAYOUTS_FILE, sep='\t', header=False, index=False, lineterminator='\n', float_format='%.6f')

    with open(out / EMBEDDINGS_FILE, 'w', encoding='utf-8') as f:
        f.write(f"{spec.vocab_size} {spec.embed_dim}\n")
        for word, vector in zip(words, vectors):
            f.write(word + ' ' + ' '.join(f"{x:.6f}" for x in vector) + '\n')

    with open(out / PLANTED_FILE, 'w', encoding='utf-8') as f:
        json.dump({
            'spec': config_to_mapping(spec),
            'communities': community,
            'liked_topics': {str(c): topics for c, topics in liked.items()},
            'engagement': {str(c): round(level, 6) for c, level in enumerate(engagement)},
            'affinity': {user: [float(x) for x in theta] for user, theta in affinity.items()},
            'doc_topics': doc_topic,
        }, f, indent=2, sort_keys=True)
        f.write('\n')

    logger.info(
        f"Generated synthetic dataset in {out}: {spec.n_users} users, {len(edges)} edges, "
        f"{len(docs)} documents, {len(log_rows)} clicks over {spec.n_days} days"
    )
    return out
