"""
Attention Layers
Word attention over keyword embeddings and social attention over friend vectors
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from scipy.special import softmax

from .config import Kernel, KernelParams, SocialMode
from .kernels import similarity_with_grad
from .params import ModelParams

logger = logging.getLogger(__name__)


class Side(Enum):
    """Which word attention parameter set to use"""
    USER = "user"
    DOCUMENT = "document"


def _side_params(side: Side, params: ModelParams) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    if side is Side.USER:
        return params.W_w, params.b_w, params.u_w
    return params.W_d, params.b_d, params.u_d


@dataclass
class WordAttentionTrace:
    """Cached activations of one word attention pass"""
    side: Side
    X: np.ndarray        # (k, D) keyword embeddings
    H: np.ndarray        # (k, h) tanh hidden states
    weights: np.ndarray  # (k,) softmax weights
    output: np.ndarray   # (h,)

    @property
    def cold(self) -> bool:
        return self.X.shape[0] == 0


def word_attention(X: np.ndarray, side: Side, params: ModelParams) -> WordAttentionTrace:
    """
    Attention pooling of keyword embeddings through a learned context vector

    H = tanh(X W^T + b), a = softmax(H u), output = a^T H. An empty keyword
    matrix yields the zero vector and a cold trace.

    Args:
        X: Keyword embedding matrix (k, D)
        side: USER (user and friends) or DOCUMENT
        params: Model parameters

    Returns:
        WordAttentionTrace
    """
    W, b, u = _side_params(side, params)
    h = W.shape[0]
    if X.shape[0] == 0:
        return WordAttentionTrace(side, X, np.zeros((0, h)), np.zeros(0), np.zeros(h))

    H = np.tanh(X @ W.T + b)
    weights = softmax(H @ u)
    return WordAttentionTrace(side, X, H, weights, weights @ H)


def word_attention_backward(trace: WordAttentionTrace, d_output: np.ndarray,
                            params: ModelParams, grads: ModelParams):
    """
    Accumulate gradients of one word attention pass into ``grads``

    Args:
        trace: Forward trace
        d_output: Upstream gradient w.r.t. the pooled vector
        params: Model parameters
        grads: Gradient accumulator (modified in place)
    """
    if trace.cold:
        return
    _, _, u = _side_params(trace.side, params)
    a, H = trace.weights, trace.H

    dH = np.outer(a, d_output)
    da = H @ d_output
    ds = a * (da - a @ da)
    dH += np.outer(ds, u)
    dZ = dH * (1.0 - H * H)

    if trace.side is Side.USER:
        grads.W_w += dZ.T @ trace.X
        grads.b_w += dZ.sum(axis=0)
        grads.u_w += H.T @ ds
    else:
        grads.W_d += dZ.T @ trace.X
        grads.b_d += dZ.sum(axis=0)
        grads.u_d += H.T @ ds


@dataclass
class SocialTrace:
    """Cached activations of one social attention pass"""
    mode: SocialMode
    v: np.ndarray
    friends: np.ndarray            # (L, h)
    q: np.ndarray
    weights: np.ndarray            # (L,)
    v_hat: np.ndarray
    scores: np.ndarray             # (L,) similarity or dynamic logits
    grad_v: Optional[np.ndarray] = None   # static: d score_j / d v, (L, h)
    grad_vj: Optional[np.ndarray] = None  # static: d score_j / d v_j, (L, h)
    Z: Optional[np.ndarray] = None        # dynamic: pre-ReLU, (L, h)


def static_social_attention(v: np.ndarray, friends: np.ndarray, kernel: Kernel,
                            kernel_params: KernelParams) -> SocialTrace:
    """
    v_hat = v + sum_j softmax(delta(v, v_j)) v_j

    Args:
        v: User vector (h,)
        friends: Friend vectors (L, h); L may be 0
        kernel: Similarity function
        kernel_params: Kernel parameters

    Returns:
        SocialTrace
    """
    n_friends = friends.shape[0]
    if n_friends == 0:
        empty = np.zeros(0)
        return SocialTrace(SocialMode.STATIC, v, friends, np.zeros_like(v), empty, v.copy(), empty)

    scores = np.empty(n_friends)
    grad_v = np.empty_like(friends)
    grad_vj = np.empty_like(friends)
    for j in range(n_friends):
        scores[j], grad_v[j], grad_vj[j] = similarity_with_grad(kernel, v, friends[j], kernel_params)
    weights = softmax(scores)
    return SocialTrace(
        SocialMode.STATIC, v, friends, np.zeros_like(v), weights, v + weights @ friends, scores,
        grad_v=grad_v, grad_vj=grad_vj
    )


def dynamic_social_attention(v: np.ndarray, friends: np.ndarray, q: np.ndarray,
                             params: ModelParams) -> SocialTrace:
    """
    Friend weights from the user, the friend and the candidate document

    e_j = u_v^T ReLU(W1 v + W2 v_j + W3 q + b), a = softmax(e),
    v_hat = v + sum_j a_j v_j.

    Args:
        v: User vector (h,)
        friends: Friend vectors (L, h); L may be 0
        q: Document vector (h,)
        params: Model parameters

    Returns:
        SocialTrace
    """
    if friends.shape[0] == 0:
        empty = np.zeros(0)
        return SocialTrace(SocialMode.DYNAMIC, v, friends, q, empty, v.copy(), empty,
                           Z=np.zeros((0, v.shape[0])))

    Z = (params.W1 @ v + params.W3 @ q + params.b_a)[None, :] + friends @ params.W2.T
    scores = np.maximum(Z, 0.0) @ params.u_v
    weights = softmax(scores)
    return SocialTrace(SocialMode.DYNAMIC, v, friends, q, weights, v + weights @ friends, scores, Z=Z)


def mean_social_attention(v: np.ndarray, friends: np.ndarray) -> SocialTrace:
    """v_hat = v + mean_j v_j"""
    n_friends = friends.shape[0]
    if n_friends == 0:
        empty = np.zeros(0)
        return SocialTrace(SocialMode.MEAN, v, friends, np.zeros_like(v), empty, v.copy(), empty)
    weights = np.full(n_friends, 1.0 / n_friends)
    return SocialTrace(SocialMode.MEAN, v, friends, np.zeros_like(v), weights,
                       v + weights @ friends, np.zeros(n_friends))


def social_attention_backward(trace: SocialTrace, d_v_hat: np.ndarray, params: ModelParams,
                              grads: ModelParams) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Back-propagate through a social attention pass

    Args:
        trace: Forward trace
        d_v_hat: Upstream gradient w.r.t. v_hat
        params: Model parameters
        grads: Gradient accumulator for the dynamic weights (modified in place)

    Returns:
        (d v, d friends (L, h), d q)
    """
    d_v = d_v_hat.copy()
    d_q = np.zeros_like(trace.q)
    a = trace.weights
    if a.shape[0] == 0:
        return d_v, np.zeros_like(trace.friends), d_q

    d_friends = np.outer(a, d_v_hat)
    if trace.mode is SocialMode.MEAN:
        return d_v, d_friends, d_q

    da = trace.friends @ d_v_hat
    d_scores = a * (da - a @ da)

    if trace.mode is SocialMode.STATIC:
        d_v += d_scores @ trace.grad_v
        d_friends += d_scores[:, None] * trace.grad_vj
        return d_v, d_friends, d_q

    relu = np.maximum(trace.Z, 0.0)
    grads.u_v += relu.T @ d_scores
    dZ = np.outer(d_scores, params.u_v) * (trace.Z > 0.0)
    dz_total = dZ.sum(axis=0)
    grads.W1 += np.outer(dz_total, trace.v)
    grads.W2 += dZ.T @ trace.friends
    grads.W3 += np.outer(dz_total, trace.q)
    grads.b_a += dZ.sum()
    d_v += params.W1.T @ dz_total
    d_friends += dZ @ params.W2
    d_q += params.W3.T @ dz_total
    return d_v, d_friends, d_q
