"""
Keyword Attention Network
Forward prediction, clamped cross-entropy and analytic gradients
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

import numpy as np
from scipy.special import expit

from .attention import (
    Side, SocialTrace, WordAttentionTrace,
    word_attention, word_attention_backward,
    static_social_attention, dynamic_social_attention, mean_social_attention,
    social_attention_backward
)
from .config import ModelConfig, SocialMode
from .optimizer import AdamState, adam_step
from .params import ModelParams

logger = logging.getLogger(__name__)

CLAMP = 1e-7
_P_FLOOR = np.finfo(np.float64).eps


@dataclass(frozen=True)
class Example:
    """One training or test pair: keys into user and document feature tables"""
    user: str
    friends: Tuple[str, ...]
    doc: str
    label: int = 0


@dataclass
class HeadTrace:
    """Social fusion and output head activations for one sample"""
    social: SocialTrace
    o: np.ndarray
    logit: float
    p: float


@dataclass
class ForwardTrace:
    """Every activation of one prediction"""
    user: WordAttentionTrace
    friends: List[WordAttentionTrace]
    doc: WordAttentionTrace
    head: HeadTrace

    @property
    def p(self) -> float:
        return self.head.p


def _friend_matrix(friend_vectors: Sequence[np.ndarray], h: int) -> np.ndarray:
    if not friend_vectors:
        return np.zeros((0, h))
    return np.vstack(friend_vectors)


def _head_forward(v: np.ndarray, friends: np.ndarray, q: np.ndarray,
                  params: ModelParams, cfg: ModelConfig) -> HeadTrace:
    if cfg.social_mode is SocialMode.STATIC:
        social = static_social_attention(v, friends, cfg.kernel, cfg.resolved_kernel_params)
    elif cfg.social_mode is SocialMode.DYNAMIC:
        social = dynamic_social_attention(v, friends, q, params)
    else:
        social = mean_social_attention(v, friends)

    o = np.concatenate([q, social.v_hat])
    logit = float(params.w_o @ o + params.b_o)
    p = float(np.clip(expit(logit), _P_FLOOR, 1.0 - _P_FLOOR))
    return HeadTrace(social, o, logit, p)


def _head_backward(trace: HeadTrace, label: int, params: ModelParams,
                   grads: ModelParams) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gradients of the clamped BCE down to (d v, d friends, d q)"""
    h = params.dim_hidden
    if CLAMP < trace.p < 1.0 - CLAMP:
        d_logit = trace.p - label
    else:
        d_logit = 0.0

    grads.w_o += d_logit * trace.o
    grads.b_o += d_logit
    d_o = d_logit * params.w_o
    d_q = d_o[:h].copy()
    d_v, d_friends, d_q_social = social_attention_backward(trace.social, d_o[h:], params, grads)
    return d_v, d_friends, d_q + d_q_social


def predict(user_keywords: np.ndarray, friend_keywords: Sequence[np.ndarray], doc_keywords: np.ndarray,
            params: ModelParams, cfg: ModelConfig) -> Tuple[float, ForwardTrace]:
    """
    Click probability for a user, their friends and a candidate document

    Args:
        user_keywords: User keyword embeddings (k, D)
        friend_keywords: One keyword matrix per friend
        doc_keywords: Document keyword embeddings (k', D)
        params: Model parameters
        cfg: Model configuration

    Returns:
        (p, ForwardTrace)
    """
    user = word_attention(user_keywords, Side.USER, params)
    friends = [word_attention(X, Side.USER, params) for X in friend_keywords]
    doc = word_attention(doc_keywords, Side.DOCUMENT, params)
    friend_matrix = _friend_matrix([f.output for f in friends], params.dim_hidden)
    head = _head_forward(user.output, friend_matrix, doc.output, params, cfg)
    return head.p, ForwardTrace(user, friends, doc, head)


def backward(trace: ForwardTrace, label: int, params: ModelParams) -> ModelParams:
    """
    Exact gradient of the clamped BCE of one prediction

    Args:
        trace: Trace from predict
        label: 0 or 1
        params: Parameters used in the forward pass

    Returns:
        Gradients shaped like ModelParams
    """
    grads = params.zeros_like()
    d_v, d_friends, d_q = _head_backward(trace.head, label, params, grads)
    word_attention_backward(trace.user, d_v, params, grads)
    for j, friend in enumerate(trace.friends):
        word_attention_backward(friend, d_friends[j], params, grads)
    word_attention_backward(trace.doc, d_q, params, grads)
    return grads


def bce_loss(probabilities: Sequence[float], labels: Sequence[int]) -> float:
    """
    Mean binary cross-entropy with probabilities clamped to [1e-7, 1 - 1e-7]

    Args:
        probabilities: Predicted p_m
        labels: y_m in {0, 1}

    Returns:
        Mean loss
    """
    p = np.clip(np.asarray(probabilities, dtype=np.float64), CLAMP, 1.0 - CLAMP)
    y = np.asarray(labels, dtype=np.float64)
    if p.shape != y.shape:
        raise ValueError(f"{p.shape[0]} probabilities for {y.shape[0]} labels")
    if p.size == 0:
        return 0.0
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


def _word_traces(examples: Sequence[Example], user_features: Mapping[str, np.ndarray],
                 doc_features: Mapping[str, np.ndarray], params: ModelParams):
    user_keys = sorted({key for ex in examples for key in (ex.user,) + ex.friends})
    doc_keys = sorted({ex.doc for ex in examples})
    users = {key: word_attention(user_features[key], Side.USER, params) for key in user_keys}
    docs = {key: word_attention(doc_features[key], Side.DOCUMENT, params) for key in doc_keys}
    return users, docs


def predict_batch(examples: Sequence[Example], user_features: Mapping[str, np.ndarray],
                  doc_features: Mapping[str, np.ndarray], params: ModelParams,
                  cfg: ModelConfig) -> np.ndarray:
    """
    Forward-only probabilities, sharing word attention across repeated profiles

    Args:
        examples: Samples to score
        user_features: User id -> keyword embeddings
        doc_features: Document id -> keyword embeddings
        params: Model parameters
        cfg: Model configuration

    Returns:
        Probabilities aligned with ``examples``
    """
    users, docs = _word_traces(examples, user_features, doc_features, params)
    h = params.dim_hidden
    probabilities = np.empty(len(examples))
    for i, ex in enumerate(examples):
        friends = _friend_matrix([users[f].output for f in ex.friends], h)
        probabilities[i] = _head_forward(users[ex.user].output, friends, docs[ex.doc].output, params, cfg).p
    return probabilities


def batch_gradient(examples: Sequence[Example], user_features: Mapping[str, np.ndarray],
                   doc_features: Mapping[str, np.ndarray], params: ModelParams,
                   cfg: ModelConfig) -> Tuple[float, ModelParams]:
    """
    Mean loss and mean per-sample gradient of a minibatch

    Word attention runs once per distinct profile; upstream gradients are
    summed per profile before its backward pass, which is exact because that
    pass is linear in its upstream gradient.

    Args:
        examples: Minibatch
        user_features: User id -> keyword embeddings
        doc_features: Document id -> keyword embeddings
        params: Model parameters
        cfg: Model configuration

    Returns:
        (mean BCE, gradients)
    """
    grads = params.zeros_like()
    if not examples:
        return 0.0, grads

    users, docs = _word_traces(examples, user_features, doc_features, params)
    h = params.dim_hidden
    d_users: Dict[str, np.ndarray] = defaultdict(lambda: np.zeros(h))
    d_docs: Dict[str, np.ndarray] = defaultdict(lambda: np.zeros(h))
    probabilities, labels = [], []

    for ex in examples:
        friends = _friend_matrix([users[f].output for f in ex.friends], h)
        head = _head_forward(users[ex.user].output, friends, docs[ex.doc].output, params, cfg)
        d_v, d_friends, d_q = _head_backward(head, ex.label, params, grads)
        d_users[ex.user] += d_v
        for j, friend in enumerate(ex.friends):
            d_users[friend] += d_friends[j]
        d_docs[ex.doc] += d_q
        probabilities.append(head.p)
        labels.append(ex.label)

    for key in sorted(d_users):
        word_attention_backward(users[key], d_users[key], params, grads)
    for key in sorted(d_docs):
        word_attention_backward(docs[key], d_docs[key], params, grads)

    scale = 1.0 / len(examples)
    for _, value in grads.items():
        value *= scale
    return bce_loss(probabilities, labels), grads


def train_batch(examples: Sequence[Example], user_features: Mapping[str, np.ndarray],
                doc_features: Mapping[str, np.ndarray], params: ModelParams,
                optimizer: AdamState, cfg: ModelConfig) -> Tuple[ModelParams, float]:
    """
    One Adam step on a minibatch

    Args:
        examples: Minibatch
        user_features: User id -> keyword embeddings
        doc_features: Document id -> keyword embeddings
        params: Current parameters
        optimizer: Adam state (advanced in place)
        cfg: Model configuration

    Returns:
        (updated parameters, mean loss before the step)
    """
    loss, grads = batch_gradient(examples, user_features, doc_features, params, cfg)
    return adam_step(params, grads, optimizer, cfg.learn_rate), loss
