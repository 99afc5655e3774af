"""
Exploration State
Visit counts, rolling per-user F1 and payouts carried from day to day
"""

import copy
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Tuple

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FriendSelection:
    """B friend paths chosen for one origin user on one day"""
    origin: str
    paths: Tuple[Tuple[str, ...], ...]
    stranded: bool = False  # origin had no out-neighbours

    def __post_init__(self):
        for path in self.paths:
            if self.origin in path:
                raise ValueError(f"path {path} contains its origin '{self.origin}'")
            if len(set(path)) != len(path):
                raise ValueError(f"path {path} repeats a user")

    @property
    def beam_width(self) -> int:
        return len(self.paths)

    def occurrences(self) -> Iterator[str]:
        """Every friend occurrence across all paths"""
        for path in self.paths:
            yield from path


@dataclass
class ExplorationState:
    """Mutable bandit bookkeeping; commit changes only at day end"""
    day: int = 0
    visit_counts: Dict[str, float] = field(default_factory=dict)
    rs_f1: Dict[str, Tuple[float, int]] = field(default_factory=dict)
    payout: Dict[Tuple[str, int], float] = field(default_factory=dict)

    def visits(self, user: str) -> float:
        """N_t(user): times selected as a friend so far"""
        return self.visit_counts.get(user, 0.0)

    def mean_f1(self, user: str, default: float = 0.0) -> float:
        """Average recorded daily F1 of a user"""
        total, count = self.rs_f1.get(user, (0.0, 0))
        if count == 0:
            return default
        return total / count

    def snapshot(self) -> 'ExplorationState':
        """Independent copy for read-only use while selections run"""
        return copy.deepcopy(self)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-compatible representation (floats round-trip exactly)"""
        return {
            'day': self.day,
            'visit_counts': {user: count for user, count in sorted(self.visit_counts.items())},
            'rs_f1': {user: [total, count] for user, (total, count) in sorted(self.rs_f1.items())},
            'payout': [[user, day, amount] for (user, day), amount in sorted(self.payout.items())]
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ExplorationState':
        return cls(
            day=int(data['day']),
            visit_counts={user: float(count) for user, count in data['visit_counts'].items()},
            rs_f1={user: (float(total), int(count)) for user, (total, count) in data['rs_f1'].items()},
            payout={(user, int(day)): float(amount) for user, day, amount in data.get('payout', [])}
        )


def update_visit_counts(selection: FriendSelection, state: ExplorationState) -> ExplorationState:
    """
    Add 1/B to N_t(v) for every occurrence of v across the B paths

    Args:
        selection: Paths selected this day
        state: State to update in place

    Returns:
        The same state object
    """
    width = selection.beam_width
    if width == 0:
        return state
    increment = 1.0 / width
    for friend in selection.occurrences():
        state.visit_counts[friend] = state.visit_counts.get(friend, 0.0) + increment
    return state


def record_rs_f1(user: str, day_f1: float, state: ExplorationState) -> ExplorationState:
    """
    Record one day's F1 for a user (the RS_F1 exploitation reward)

    Args:
        user: User id
        day_f1: F1 in [0, 1]
        state: State to update in place

    Returns:
        The same state object
    """
    if not 0.0 <= day_f1 <= 1.0:
        raise ValueError(f"F1 must lie in [0, 1], got {day_f1} for '{user}'")
    total, count = state.rs_f1.get(user, (0.0, 0))
    state.rs_f1[user] = (total + float(day_f1), count + 1)
    return state
