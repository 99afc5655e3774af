"""
Exploitation Rewards
Q_t(v) providers: rolling RS F1, static PageRank, dynamic PageRank, payout
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Mapping, Optional

from ..exceptions import ConfigError
from ..graph import ActivityGraph, PageRankConfig, SocialGraph, pagerank
from .state import ExplorationState

logger = logging.getLogger(__name__)


class ExploitationStrategy(Enum):
    """Source of the exploitation reward Q_t(v)"""
    RS_F1 = "rs_f1"    # average F1 of v under the recommender
    SPR = "spr"        # PageRank on the social graph
    DPR = "dpr"        # PageRank on the day's activity graph
    PAYOUT = "payout"  # cumulative payout earned by v


@dataclass(frozen=True)
class RewardCache:
    """Precomputed per-day reward tables"""
    spr: Optional[Mapping[str, float]] = None
    dpr: Optional[Mapping[str, float]] = None
    payout: Optional[Mapping[str, float]] = None  # min-max normalized to [0, 1]


def normalized_payouts(state: ExplorationState, users, day: int) -> Dict[str, float]:
    """
    Cumulative payout of each user up to ``day``, min-max scaled to [0, 1]

    Args:
        state: State holding (user, day) -> amount
        users: Users to score (absent users count as 0)
        day: Inclusive cut-off

    Returns:
        Mapping user -> normalized payout
    """
    totals = {user: 0.0 for user in users}
    for (user, payout_day), amount in state.payout.items():
        if payout_day <= day and user in totals:
            totals[user] += amount
    if not totals:
        return {}
    low, high = min(totals.values()), max(totals.values())
    if high <= low:
        return {user: 0.0 for user in totals}
    span = high - low
    return {user: (value - low) / span for user, value in totals.items()}


def build_reward_cache(
    strategy: ExploitationStrategy,
    state: ExplorationState,
    social_graph: SocialGraph,
    activity_graph: Optional[ActivityGraph] = None,
    pagerank_cfg: PageRankConfig = PageRankConfig(),
    spr_scores: Optional[Mapping[str, float]] = None,
    has_payouts: bool = True
) -> RewardCache:
    """
    Compute the reward table the strategy needs for the current day

    Args:
        strategy: Active exploitation strategy
        state: Exploration state (day and payouts)
        social_graph: Static social graph
        activity_graph: Activity graph of the current day (DPR)
        pagerank_cfg: PageRank settings
        spr_scores: Previously computed social PageRank to reuse
        has_payouts: Whether a payout file was supplied

    Returns:
        RewardCache with the relevant table filled in
    """
    if strategy is ExploitationStrategy.SPR:
        if spr_scores is None:
            spr_scores = pagerank(social_graph.edges(), social_graph.nodes, pagerank_cfg)
        return RewardCache(spr=spr_scores)

    if strategy is ExploitationStrategy.DPR:
        edges = activity_graph.edges if activity_graph is not None else ()
        nodes = set(social_graph.nodes)
        for consumer, creator in edges:
            nodes.add(consumer)
            nodes.add(creator)
        return RewardCache(dpr=pagerank(edges, nodes, pagerank_cfg))

    if strategy is ExploitationStrategy.PAYOUT:
        if not has_payouts:
            raise ConfigError('strategy', "PAYOUT exploitation requires payouts.tsv in the dataset")
        return RewardCache(payout=normalized_payouts(state, social_graph.nodes, state.day))

    return RewardCache()


class ExploitationValues:
    """Q_t(v) lookup for one strategy against one state snapshot"""

    def __init__(self, strategy: ExploitationStrategy, state: ExplorationState,
                 cache: RewardCache = RewardCache()):
        """
        Initialize the lookup

        Args:
            strategy: Exploitation strategy
            state: State snapshot (RS_F1 reads its rolling F1)
            cache: Reward tables for the graph-based and payout strategies
        """
        self.strategy = strategy
        self.state = state
        self.cache = cache

        if strategy is ExploitationStrategy.SPR and cache.spr is None:
            raise ValueError("SPR exploitation needs a social PageRank table")
        if strategy is ExploitationStrategy.DPR and cache.dpr is None:
            raise ValueError("DPR exploitation needs an activity PageRank table")
        if strategy is ExploitationStrategy.PAYOUT and cache.payout is None:
            raise ConfigError('strategy', "PAYOUT exploitation requires payouts.tsv in the dataset")

    def __call__(self, v: str) -> float:
        if self.strategy is ExploitationStrategy.RS_F1:
            return self.state.mean_f1(v)
        if self.strategy is ExploitationStrategy.SPR:
            return self.cache.spr.get(v, 0.0)
        if self.strategy is ExploitationStrategy.DPR:
            return self.cache.dpr.get(v, 0.0)
        return self.cache.payout.get(v, 0.0)


def exploitation_value(
    v: str,
    strategy: ExploitationStrategy,
    state: ExplorationState,
    cache: RewardCache = RewardCache()
) -> float:
    """
    Q_t(v) under the given strategy

    Args:
        v: Candidate friend
        strategy: Exploitation strategy
        state: Exploration state
        cache: Reward tables

    Returns:
        Exploitation value
    """
    return ExploitationValues(strategy, state, cache)(v)
