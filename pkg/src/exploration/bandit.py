"""
UCB1 Scoring
Exploration utility and the exploitation/exploration trade-off for one candidate
"""

import math
from dataclasses import dataclass
from typing import Callable

from .state import ExplorationState


@dataclass(frozen=True)
class BanditConfig:
    """Friend search settings"""
    beam_width: int = 3       # B: paths per user
    depth: int = 10           # L: friends per path
    lam: float = 1.0          # trade-off between Q and U
    epsilon: float = 0.7      # epsilon-greedy threshold
    seed: int = 0
    greedy_below_epsilon: bool = True  # p < epsilon takes the greedy branch

    def __post_init__(self):
        if self.beam_width < 1:
            raise ValueError(f"beam_width must be >= 1, got {self.beam_width}")
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")
        if self.lam < 0:
            raise ValueError(f"lambda must be >= 0, got {self.lam}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")


def exploration_utility(v: str, c_l: str, state: ExplorationState) -> float:
    """
    U_t(v) = sqrt(ln N_t(c_l) / (N_t(v) + 1))

    Counts below 1 (a current node never or only fractionally visited) give a
    zero numerator instead of a negative logarithm.

    Args:
        v: Candidate friend
        c_l: Current tail node of the path
        state: Exploration state

    Returns:
        Non-negative utility
    """
    n_current = state.visits(c_l)
    numerator = math.log(n_current) if n_current > 1.0 else 0.0
    return math.sqrt(numerator / (state.visits(v) + 1.0))


def ucb1_score(
    v: str,
    c_l: str,
    values: Callable[[str], float],
    state: ExplorationState,
    lam: float
) -> float:
    """
    Q_t(v) + lambda * U_t(v)

    Args:
        v: Candidate friend
        c_l: Current tail node
        values: Exploitation value lookup
        state: Exploration state
        lam: Trade-off weight

    Returns:
        UCB1 score
    """
    score = values(v)
    if lam:
        score += lam * exploration_utility(v, c_l, state)
    return score
