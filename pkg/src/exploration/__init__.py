"""Friend Exploration Module"""
from .state import ExplorationState, FriendSelection, update_visit_counts, record_rs_f1
from .bandit import BanditConfig, exploration_utility, ucb1_score
from .rewards import (
    ExploitationStrategy, RewardCache, ExploitationValues,
    build_reward_cache, exploitation_value, normalized_payouts
)
from .selectors import (
    SelectionMode,
    select_friends_mcts, select_friends_egreedy, select_friends_random,
    select_friends_one_hop, select_friends, initialize_state
)

__all__ = [
    'ExplorationState', 'FriendSelection', 'update_visit_counts', 'record_rs_f1',
    'BanditConfig', 'exploration_utility', 'ucb1_score',
    'ExploitationStrategy', 'RewardCache', 'ExploitationValues',
    'build_reward_cache', 'exploitation_value', 'normalized_payouts',
    'SelectionMode',
    'select_friends_mcts', 'select_friends_egreedy', 'select_friends_random',
    'select_friends_one_hop', 'select_friends', 'initialize_state'
]
