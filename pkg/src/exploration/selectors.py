"""
Friend Selectors
Beam-search MCTS, epsilon-greedy and random baselines over the social graph
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..exceptions import UnknownNodeError
from ..graph import SocialGraph
from ..utils import derive_rng
from .bandit import BanditConfig, ucb1_score
from .state import ExplorationState, FriendSelection, update_visit_counts

logger = logging.getLogger(__name__)

Values = Callable[[str], float]
SeedLike = Union[int, np.random.Generator]


class SelectionMode(Enum):
    """How higher-order friends are chosen"""
    MCTS = "mcts"
    EGREEDY = "egreedy"
    RANDOM_SELECT = "random_select"
    RANDOM_WALK = "random_walk"
    ONE_HOP = "one_hop"    # first-order neighbours only
    NONE = "none"          # no friends


@dataclass(frozen=True)
class _Beam:
    path: Tuple[str, ...]
    score: float
    frozen: bool = False


def _as_rng(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _require_node(u: str, g: SocialGraph):
    if u not in g:
        raise UnknownNodeError(u, "friend selection origin")


def _admissible(g: SocialGraph, tail: str, origin: str, path: Sequence[str]) -> List[str]:
    """Out-neighbours of tail that are neither the origin nor already on the path"""
    on_path = set(path)
    return [v for v in g.out_edges[tail] if v != origin and v not in on_path]


def _stranded(u: str, width: int) -> FriendSelection:
    logger.warning(f"User '{u}' has no out-neighbours; selecting {width} empty paths")
    return FriendSelection(origin=u, paths=tuple(() for _ in range(width)), stranded=True)


def _greedy(candidates: Sequence[str], values: Values) -> str:
    # highest Q, then smallest id
    return min(candidates, key=lambda v: (-values(v), v))


def select_friends_mcts(
    u: str,
    cfg: BanditConfig,
    values: Values,
    state: ExplorationState,
    g: SocialGraph
) -> FriendSelection:
    """
    Beam search over the social graph scored by accumulated UCB1

    At every depth each live beam proposes its admissible neighbours v with
    score T_b + UCB1(v | tail of b). The best candidates across all beams
    fill the slots not held by frozen beams (ties: smaller id, then earlier
    beam). A beam with no admissible neighbour freezes at its current length.
    Fewer than B distinct paths are padded by repeating the best ones.

    Args:
        u: Origin user
        cfg: Bandit settings
        values: Exploitation value lookup Q_t
        state: Read-only state snapshot
        g: Social graph

    Returns:
        FriendSelection with B paths
    """
    _require_node(u, g)
    if not g.out_edges[u]:
        return _stranded(u, cfg.beam_width)

    beams: List[_Beam] = [_Beam(path=(), score=0.0)]
    for _ in range(cfg.depth):
        frozen: List[_Beam] = []
        candidates: List[Tuple[float, str, int, _Beam]] = []
        for index, beam in enumerate(beams):
            if beam.frozen:
                frozen.append(beam)
                continue
            tail = beam.path[-1] if beam.path else u
            admissible = _admissible(g, tail, u, beam.path)
            if not admissible:
                frozen.append(_Beam(beam.path, beam.score, frozen=True))
                continue
            for v in admissible:
                score = beam.score + ucb1_score(v, tail, values, state, cfg.lam)
                candidates.append((score, v, index, beam))

        if not candidates:
            beams = frozen
            break

        candidates.sort(key=lambda c: (-c[0], c[1], c[2]))
        slots = max(cfg.beam_width - len(frozen), 0)
        extended = [_Beam(beam.path + (v,), score) for score, v, _, beam in candidates[:slots]]
        beams = frozen + extended

    ranked = sorted(beams, key=lambda b: (-b.score, b.path))
    paths = [b.path for b in ranked]
    while len(paths) < cfg.beam_width:
        paths.append(paths[len(paths) % len(ranked)])
    return FriendSelection(origin=u, paths=tuple(paths[:cfg.beam_width]))


def select_friends_egreedy(
    u: str,
    cfg: BanditConfig,
    values: Values,
    state: ExplorationState,
    g: SocialGraph,
    rng: SeedLike
) -> FriendSelection:
    """
    B independent epsilon-greedy walks of length up to L

    Each step draws p ~ U[0, 1). With ``greedy_below_epsilon`` the step is
    greedy on Q when p < epsilon and uniform otherwise; the flag flips the
    branch.

    Args:
        u: Origin user
        cfg: Bandit settings
        values: Exploitation value lookup Q_t
        state: Read-only state snapshot (unused by the walk itself)
        g: Social graph
        rng: Generator or seed

    Returns:
        FriendSelection with B paths
    """
    _require_node(u, g)
    if not g.out_edges[u]:
        return _stranded(u, cfg.beam_width)

    rng = _as_rng(rng)
    paths = []
    for _ in range(cfg.beam_width):
        path: List[str] = []
        tail = u
        for _ in range(cfg.depth):
            admissible = _admissible(g, tail, u, path)
            if not admissible:
                break
            p = rng.random()
            greedy = p < cfg.epsilon if cfg.greedy_below_epsilon else p >= cfg.epsilon
            if greedy:
                tail = _greedy(admissible, values)
            else:
                tail = admissible[int(rng.integers(len(admissible)))]
            path.append(tail)
        paths.append(tuple(path))
    return FriendSelection(origin=u, paths=tuple(paths))


def select_friends_random(
    u: str,
    cfg: BanditConfig,
    mode: SelectionMode,
    g: SocialGraph,
    rng: SeedLike
) -> FriendSelection:
    """
    Random Select or Random Walk baseline

    Args:
        u: Origin user
        cfg: Bandit settings (B and L)
        mode: RANDOM_SELECT or RANDOM_WALK
        g: Social graph
        rng: Generator or seed

    Returns:
        FriendSelection with B paths
    """
    _require_node(u, g)
    rng = _as_rng(rng)

    if mode is SelectionMode.RANDOM_SELECT:
        others = [v for v in g.nodes if v != u]
        size = min(cfg.depth, len(others))
        paths = []
        for _ in range(cfg.beam_width):
            picks = rng.choice(len(others), size=size, replace=False) if size else []
            paths.append(tuple(others[i] for i in picks))
        return FriendSelection(origin=u, paths=tuple(paths))

    if mode is SelectionMode.RANDOM_WALK:
        if not g.out_edges[u]:
            return _stranded(u, cfg.beam_width)
        paths = []
        for _ in range(cfg.beam_width):
            path: List[str] = []
            tail = u
            for _ in range(cfg.depth):
                admissible = _admissible(g, tail, u, path)
                if not admissible:
                    break
                tail = admissible[int(rng.integers(len(admissible)))]
                path.append(tail)
            paths.append(tuple(path))
        return FriendSelection(origin=u, paths=tuple(paths))

    raise ValueError(f"{mode} is not a random selection mode")


def select_friends_one_hop(u: str, cfg: BanditConfig, g: SocialGraph, rng: SeedLike) -> FriendSelection:
    """Up to L distinct first-order neighbours per path, drawn uniformly"""
    _require_node(u, g)
    first_order = list(g.out_edges[u])
    if not first_order:
        return _stranded(u, cfg.beam_width)
    rng = _as_rng(rng)
    size = min(cfg.depth, len(first_order))
    paths = []
    for _ in range(cfg.beam_width):
        picks = rng.choice(len(first_order), size=size, replace=False)
        paths.append(tuple(first_order[i] for i in picks))
    return FriendSelection(origin=u, paths=tuple(paths))


def select_friends(
    u: str,
    mode: SelectionMode,
    cfg: BanditConfig,
    values: Optional[Values],
    state: ExplorationState,
    g: SocialGraph,
    rng: SeedLike
) -> FriendSelection:
    """
    Dispatch to the selector for ``mode``

    Args:
        u: Origin user
        mode: Selection mode
        cfg: Bandit settings
        values: Exploitation value lookup (MCTS and EGREEDY only)
        state: Read-only state snapshot
        g: Social graph
        rng: Per-user generator or seed

    Returns:
        FriendSelection
    """
    if mode is SelectionMode.MCTS:
        return select_friends_mcts(u, cfg, values, state, g)
    if mode is SelectionMode.EGREEDY:
        return select_friends_egreedy(u, cfg, values, state, g, rng)
    if mode in (SelectionMode.RANDOM_SELECT, SelectionMode.RANDOM_WALK):
        return select_friends_random(u, cfg, mode, g, rng)
    if mode is SelectionMode.ONE_HOP:
        return select_friends_one_hop(u, cfg, g, rng)
    _require_node(u, g)
    return FriendSelection(origin=u, paths=((),))


def initialize_state(g: SocialGraph, cfg: BanditConfig, seed: int) -> ExplorationState:
    """
    Day-0 state: B random paths per user seed the visit counts

    Args:
        g: Social graph
        cfg: Bandit settings
        seed: Run seed

    Returns:
        Fresh ExplorationState
    """
    state = ExplorationState(day=0)
    for u in g.nodes:
        selection = select_friends_random(
            u, cfg, SelectionMode.RANDOM_SELECT, g, derive_rng(seed, 'init', u)
        )
        update_visit_counts(selection, state)
    logger.info(f"Initialized visit counts for {len(state.visit_counts)} users from random paths")
    return state
