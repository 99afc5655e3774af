"""
Run Settings
Typed run and synthetic-dataset configuration loaded from YAML or JSON files
"""

import json
import logging
import typing
from dataclasses import asdict, dataclass, field, fields
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

from .exceptions import ConfigError
from .exploration import BanditConfig, ExploitationStrategy, SelectionMode
from .graph import PageRankConfig
from .model import Kernel, KernelParams, ModelConfig, SocialMode, DEFAULT_KERNEL_PARAMS
from .utils import load_yaml

logger = logging.getLogger(__name__)

# File keys that differ from dataclass field names
_KEY_ALIASES = {'lambda': 'lam'}
_FIELD_KEYS = {field_name: key for key, field_name in _KEY_ALIASES.items()}


def _default_logging() -> Dict[str, Any]:
    return {
        'level': 'INFO',
        'file_path': 'logs/sean.log',
        'max_bytes': 10485760,
        'backup_count': 5,
        'console_output': True
    }


def _require(condition: bool, key: str, message: str):
    if not condition:
        raise ConfigError(key, message)


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a simulation run"""
    seed: int = 0
    # friend search
    selection_mode: SelectionMode = SelectionMode.MCTS
    strategy: ExploitationStrategy = ExploitationStrategy.RS_F1
    beam_width: int = 3
    depth: int = 10
    lam: float = 1.0
    epsilon: float = 0.7
    greedy_below_epsilon: bool = True
    # model
    social_mode: SocialMode = SocialMode.DYNAMIC
    kernel: Kernel = Kernel.RBF
    kernel_gamma: Optional[float] = None
    kernel_c: Optional[float] = None
    kernel_d: Optional[float] = None
    dim_hidden: int = 64
    learn_rate: float = 1e-3
    epochs_per_day: int = 5
    batch_size: int = 64
    user_keywords: int = 200
    doc_keywords: int = 90
    # evaluation
    threshold: float = 0.5
    start_day: Optional[int] = None
    end_day: Optional[int] = None
    # pagerank
    damping: float = 0.85
    pagerank_tolerance: float = 1e-8
    pagerank_max_iters: int = 200
    # execution
    workers: int = 1
    logging: Dict[str, Any] = field(default_factory=_default_logging)

    def __post_init__(self):
        _require(self.beam_width >= 1, 'beam_width', f"must be >= 1, got {self.beam_width}")
        _require(self.depth >= 1, 'depth', f"must be >= 1, got {self.depth}")
        _require(self.lam >= 0, 'lambda', f"must be >= 0, got {self.lam}")
        _require(0.0 <= self.epsilon <= 1.0, 'epsilon', f"must lie in [0, 1], got {self.epsilon}")
        _require(self.dim_hidden >= 1, 'dim_hidden', f"must be >= 1, got {self.dim_hidden}")
        _require(self.learn_rate > 0, 'learn_rate', f"must be > 0, got {self.learn_rate}")
        _require(self.epochs_per_day >= 1, 'epochs_per_day', f"must be >= 1, got {self.epochs_per_day}")
        _require(self.batch_size >= 1, 'batch_size', f"must be >= 1, got {self.batch_size}")
        _require(self.user_keywords >= 1, 'user_keywords', f"must be >= 1, got {self.user_keywords}")
        _require(self.doc_keywords >= 1, 'doc_keywords', f"must be >= 1, got {self.doc_keywords}")
        _require(0.0 < self.threshold < 1.0, 'threshold', f"must lie in (0, 1), got {self.threshold}")
        _require(0.0 < self.damping < 1.0, 'damping', f"must lie in (0, 1), got {self.damping}")
        _require(self.pagerank_tolerance > 0, 'pagerank_tolerance',
                 f"must be > 0, got {self.pagerank_tolerance}")
        _require(self.pagerank_max_iters >= 1, 'pagerank_max_iters',
                 f"must be >= 1, got {self.pagerank_max_iters}")
        _require(self.workers >= 1, 'workers', f"must be >= 1, got {self.workers}")
        for key in ('start_day', 'end_day'):
            value = getattr(self, key)
            _require(value is None or value >= 0, key, f"must be >= 0, got {value}")
        if self.start_day is not None and self.end_day is not None:
            _require(self.start_day <= self.end_day, 'end_day',
                     f"must be >= start_day ({self.start_day}), got {self.end_day}")
        if self.kernel_d is not None:
            _require(self.kernel_d >= 1 and float(self.kernel_d).is_integer(), 'kernel_d',
                     f"must be a whole number >= 1, got {self.kernel_d}")

    def bandit_config(self) -> BanditConfig:
        return BanditConfig(
            beam_width=self.beam_width, depth=self.depth, lam=self.lam,
            epsilon=self.epsilon, seed=self.seed,
            greedy_below_epsilon=self.greedy_below_epsilon
        )

    def model_config(self, dim_embed: int) -> ModelConfig:
        defaults = DEFAULT_KERNEL_PARAMS[self.kernel]
        kernel_params = KernelParams(
            gamma=defaults.gamma if self.kernel_gamma is None else self.kernel_gamma,
            c=defaults.c if self.kernel_c is None else self.kernel_c,
            d=defaults.d if self.kernel_d is None else self.kernel_d
        )
        return ModelConfig(
            dim_embed=dim_embed, dim_hidden=self.dim_hidden,
            social_mode=self.social_mode, kernel=self.kernel, kernel_params=kernel_params,
            learn_rate=self.learn_rate, epochs_per_day=self.epochs_per_day,
            batch_size=self.batch_size, seed=self.seed
        )

    def pagerank_config(self) -> PageRankConfig:
        return PageRankConfig(
            damping=self.damping, tolerance=self.pagerank_tolerance,
            max_iters=self.pagerank_max_iters
        )


@dataclass(frozen=True)
class SyntheticSpec:
    """Planted-community dataset generator settings"""
    seed: int = 0
    n_users: int = 500
    n_communities: int = 4
    n_days: int = 30
    docs_per_day: int = 48
    vocab_size: int = 360
    topic_count: int = 6
    topics_per_community: int = 3
    p_in: float = 0.03
    p_out: float = 0.001
    # per-user topic affinity ~ Dirichlet(concentration) over the community's topics
    affinity_concentration: float = 0.5
    click_noise: float = 0.1
    # community engagement is spread evenly around activity_rate
    activity_rate: float = 0.6
    engagement_spread: float = 0.6
    clicks_per_active_day: float = 2.0
    reshare_rounds: int = 3
    words_per_doc: int = 40
    topic_word_share: float = 0.8
    embed_dim: int = 32
    embed_noise: float = 0.3
    payout_per_click: float = 1.0

    def __post_init__(self):
        for key in ('n_users', 'n_communities', 'n_days', 'docs_per_day', 'vocab_size',
                    'topic_count', 'topics_per_community', 'words_per_doc', 'embed_dim'):
            value = getattr(self, key)
            _require(value >= 1, key, f"must be >= 1, got {value}")
        for key in ('p_in', 'p_out', 'click_noise', 'activity_rate', 'engagement_spread', 'topic_word_share'):
            value = getattr(self, key)
            _require(0.0 <= value <= 1.0, key, f"must lie in [0, 1], got {value}")
        for key in ('clicks_per_active_day', 'embed_noise', 'payout_per_click'):
            value = getattr(self, key)
            _require(value >= 0, key, f"must be >= 0, got {value}")
        _require(self.affinity_concentration > 0, 'affinity_concentration',
                 f"must be > 0, got {self.affinity_concentration}")
        _require(self.reshare_rounds >= 0, 'reshare_rounds', f"must be >= 0, got {self.reshare_rounds}")
        _require(self.n_communities <= self.n_users, 'n_communities',
                 f"cannot exceed n_users ({self.n_users})")
        _require(self.topics_per_community <= self.topic_count, 'topics_per_community',
                 f"cannot exceed topic_count ({self.topic_count})")
        _require(self.topic_count <= self.vocab_size, 'topic_count',
                 f"cannot exceed vocab_size ({self.vocab_size})")
        _require(self.n_days >= 2, 'n_days', f"needs at least 2 days to test, got {self.n_days}")


ConfigKind = Union[RunConfig, SyntheticSpec]
_KINDS = {'run': RunConfig, 'synthetic': SyntheticSpec}


def _coerce(key: str, value: Any, annotation: Any) -> Any:
    """Convert a raw file value to the annotated field type"""
    origin = typing.get_origin(annotation)
    if origin is Union:
        options = [a for a in typing.get_args(annotation) if a is not type(None)]
        if value is None:
            return None
        return _coerce(key, value, options[0])

    if isinstance(annotation, type) and issubclass(annotation, Enum):
        if isinstance(value, annotation):
            return value
        try:
            return annotation(str(value).lower())
        except ValueError:
            choices = ', '.join(member.value for member in annotation)
            raise ConfigError(key, f"unknown value {value!r} (choose from {choices})")

    if annotation is bool:
        if not isinstance(value, bool):
            raise ConfigError(key, f"expected true/false, got {value!r}")
        return value

    if annotation is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(key, f"expected an integer, got {value!r}")
        return value

    if annotation is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(key, f"expected a number, got {value!r}")
        return float(value)

    if origin is dict or annotation is dict:
        if not isinstance(value, dict):
            raise ConfigError(key, f"expected a mapping, got {value!r}")
        return value

    return value


def config_from_mapping(data: Dict[str, Any], kind: str = 'run') -> ConfigKind:
    """
    Build a config from a flat mapping, rejecting unknown keys

    Args:
        data: Raw mapping (file keys, e.g. ``lambda``)
        kind: 'run' or 'synthetic'

    Returns:
        RunConfig or SyntheticSpec
    """
    if kind not in _KINDS:
        raise ConfigError('kind', f"unknown config kind {kind!r}")
    if not isinstance(data, dict):
        raise ConfigError('<root>', "configuration must be a mapping of keys to values")

    cls = _KINDS[kind]
    hints = typing.get_type_hints(cls)
    names = {f.name for f in fields(cls)}
    values = {}
    for key, value in data.items():
        name = _KEY_ALIASES.get(key, key)
        if name not in names or (name != key and kind != 'run'):
            raise ConfigError(key, "unknown configuration key")
        values[name] = _coerce(key, value, hints[name])

    if 'logging' in values:
        merged = _default_logging()
        for sub_key in values['logging']:
            if sub_key not in merged:
                raise ConfigError(f"logging.{sub_key}", "unknown configuration key")
        merged.update(values['logging'])
        values['logging'] = merged

    return cls(**values)


def load_config(path: Union[str, Path], kind: str = 'run') -> ConfigKind:
    """
    Load a run configuration or synthetic spec from a YAML or JSON file

    Args:
        path: Configuration file
        kind: 'run' or 'synthetic'

    Returns:
        Fully resolved config
    """
    try:
        data = load_yaml(path)
    except FileNotFoundError as e:
        raise ConfigError('<file>', str(e))
    except Exception as e:
        raise ConfigError('<file>', f"cannot parse {path}: {e}")
    return config_from_mapping(data, kind)


def config_to_mapping(cfg: ConfigKind) -> Dict[str, Any]:
    """Plain mapping using file keys and enum values"""
    data = {}
    for key, value in asdict(cfg).items():
        if isinstance(value, Enum):
            value = value.value
        data[_FIELD_KEYS.get(key, key)] = value
    return data


def save_config(cfg: ConfigKind, path: Union[str, Path]):
    """
    Write a config as JSON that loads back to an equal object

    Args:
        cfg: RunConfig or SyntheticSpec
        path: Output file
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(config_to_mapping(cfg), f, indent=2, sort_keys=True)
        f.write('\n')


def log_config(cfg: ConfigKind):
    """Echo every resolved setting to the log"""
    for key, value in sorted(config_to_mapping(cfg).items()):
        logger.info(f"  {key} = {value}")
