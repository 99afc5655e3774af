"""
Adam Optimizer
Bias-corrected first/second moment updates over ModelParams
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..exceptions import OptimizerError
from .params import ModelParams

logger = logging.getLogger(__name__)

BETA1 = 0.9
BETA2 = 0.999
EPSILON = 1e-8


@dataclass
class AdamState:
    """First and second moments plus the step counter"""
    m: ModelParams
    v: ModelParams
    step: int = 0

    @classmethod
    def for_params(cls, params: ModelParams) -> 'AdamState':
        return cls(m=params.zeros_like(), v=params.zeros_like(), step=0)


def adam_step(params: ModelParams, grads: ModelParams, state: AdamState, lr: float) -> ModelParams:
    """
    One Adam update

    A non-finite gradient rejects the whole step: neither the parameters nor
    the moments change.

    Args:
        params: Current parameters (not modified)
        grads: Gradients shaped like params
        state: Optimizer state (advanced in place on success)
        lr: Learning rate

    Returns:
        Updated parameters
    """
    for name, grad in grads.items():
        if not np.all(np.isfinite(grad)):
            bad = int(np.size(grad) - np.count_nonzero(np.isfinite(grad)))
            raise OptimizerError(name, f"{bad} non-finite gradient entries at step {state.step + 1}")

    state.step += 1
    correction1 = 1.0 - BETA1 ** state.step
    correction2 = 1.0 - BETA2 ** state.step

    updated = {}
    for name, value in params.items():
        grad = getattr(grads, name)
        m = BETA1 * getattr(state.m, name) + (1.0 - BETA1) * grad
        v = BETA2 * getattr(state.v, name) + (1.0 - BETA2) * grad * grad
        setattr(state.m, name, np.asarray(m))
        setattr(state.v, name, np.asarray(v))
        m_hat = m / correction1
        v_hat = v / correction2
        updated[name] = np.asarray(value - lr * m_hat / (np.sqrt(v_hat) + EPSILON))
    return ModelParams(**updated)
