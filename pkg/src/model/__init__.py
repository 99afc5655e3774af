"""Keyword Attention Model Module"""
from .config import SocialMode, Kernel, KernelParams, ModelConfig, DEFAULT_KERNEL_PARAMS
from .params import ModelParams, init_params
from .kernels import similarity, similarity_with_grad
from .attention import (
    Side, WordAttentionTrace, SocialTrace,
    word_attention, word_attention_backward,
    static_social_attention, dynamic_social_attention, mean_social_attention,
    social_attention_backward
)
from .optimizer import AdamState, adam_step
from .network import (
    Example, ForwardTrace, predict, backward, bce_loss,
    predict_batch, batch_gradient, train_batch
)

__all__ = [
    'SocialMode', 'Kernel', 'KernelParams', 'ModelConfig', 'DEFAULT_KERNEL_PARAMS',
    'ModelParams', 'init_params',
    'similarity', 'similarity_with_grad',
    'Side', 'WordAttentionTrace', 'SocialTrace',
    'word_attention', 'word_attention_backward',
    'static_social_attention', 'dynamic_social_attention', 'mean_social_attention',
    'social_attention_backward',
    'AdamState', 'adam_step',
    'Example', 'ForwardTrace', 'predict', 'backward', 'bce_loss',
    'predict_batch', 'batch_gradient', 'train_batch'
]
