"""
Model Parameters
Trainable tensors of the keyword attention network
"""

import logging
from dataclasses import dataclass, fields
from typing import Dict, Iterator, Tuple

import numpy as np

from .config import ModelConfig

logger = logging.getLogger(__name__)


@dataclass
class ModelParams:
    """
    All trainable tensors (float64)

    User-side word attention (also used for friends): W_w, b_w, u_w.
    Document-side word attention: W_d, b_d, u_d.
    Dynamic social attention: W1, W2, W3, b_a, u_v.
    Output head over [q; v_hat]: w_o, b_o.
    """
    W_w: np.ndarray
    b_w: np.ndarray
    u_w: np.ndarray
    W_d: np.ndarray
    b_d: np.ndarray
    u_d: np.ndarray
    W1: np.ndarray
    W2: np.ndarray
    W3: np.ndarray
    b_a: np.ndarray  # shape ()
    u_v: np.ndarray
    w_o: np.ndarray
    b_o: np.ndarray  # shape ()

    @classmethod
    def field_names(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def items(self) -> Iterator[Tuple[str, np.ndarray]]:
        for name in self.field_names():
            yield name, getattr(self, name)

    def as_dict(self) -> Dict[str, np.ndarray]:
        return dict(self.items())

    @classmethod
    def from_dict(cls, arrays: Dict[str, np.ndarray]) -> 'ModelParams':
        missing = set(cls.field_names()) - set(arrays)
        if missing:
            raise ValueError(f"missing parameter tensors: {sorted(missing)}")
        return cls(**{name: np.array(arrays[name], dtype=np.float64) for name in cls.field_names()})

    def zeros_like(self) -> 'ModelParams':
        return ModelParams(**{name: np.zeros_like(value) for name, value in self.items()})

    def copy(self) -> 'ModelParams':
        return ModelParams(**{name: value.copy() for name, value in self.items()})

    def all_finite(self) -> bool:
        return all(np.all(np.isfinite(value)) for _, value in self.items())

    @property
    def dim_hidden(self) -> int:
        return self.W_w.shape[0]

    @property
    def dim_embed(self) -> int:
        return self.W_w.shape[1]


def _glorot(rng: np.random.Generator, shape: Tuple[int, ...], fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def init_params(cfg: ModelConfig, seed: int) -> ModelParams:
    """
    Glorot-uniform weights, zero biases

    Args:
        cfg: Model configuration (D and h)
        seed: Initialization seed

    Returns:
        Fresh ModelParams
    """
    rng = np.random.default_rng(seed)
    h, d = cfg.dim_hidden, cfg.dim_embed

    params = ModelParams(
        W_w=_glorot(rng, (h, d), d, h),
        b_w=np.zeros(h),
        u_w=_glorot(rng, (h,), h, 1),
        W_d=_glorot(rng, (h, d), d, h),
        b_d=np.zeros(h),
        u_d=_glorot(rng, (h,), h, 1),
        W1=_glorot(rng, (h, h), h, h),
        W2=_glorot(rng, (h, h), h, h),
        W3=_glorot(rng, (h, h), h, h),
        b_a=np.zeros(()),
        u_v=_glorot(rng, (h,), h, 1),
        w_o=_glorot(rng, (2 * h,), 2 * h, 1),
        b_o=np.zeros(()),
    )
    logger.debug(f"Initialized parameters (h={h}, D={d}, seed={seed})")
    return params
