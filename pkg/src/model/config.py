"""
Model Configuration
Social attention modes, similarity kernels and training hyper-parameters
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional


class SocialMode(Enum):
    """How friend vectors are fused into the user vector"""
    STATIC = "static"    # fixed similarity kernel
    DYNAMIC = "dynamic"  # learned user/friend/document scorer
    MEAN = "mean"        # plain average, no attention


class Kernel(Enum):
    """Similarity functions for static social attention"""
    COSINE = "cosine"
    POLYNOMIAL = "polynomial"
    SIGMOID = "sigmoid"
    RBF = "rbf"
    EUCLIDEAN = "euclidean"
    EXPONENTIAL = "exponential"
    MANHATTAN = "manhattan"
    GESD = "gesd"
    AESD = "aesd"


@dataclass(frozen=True)
class KernelParams:
    """gamma, c and degree d; unused entries are ignored by the kernel"""
    gamma: float = 0.5
    c: float = 1.0
    d: float = 2.0

    def __post_init__(self):
        # a fractional degree turns negative gamma*x.y + c into a complex score
        if not float(self.d).is_integer():
            raise ValueError(f"polynomial degree d must be a whole number, got {self.d}")


DEFAULT_KERNEL_PARAMS: Dict[Kernel, KernelParams] = {
    Kernel.COSINE: KernelParams(),
    Kernel.POLYNOMIAL: KernelParams(gamma=0.5, c=1.0, d=2.0),
    Kernel.SIGMOID: KernelParams(gamma=0.5, c=1.0),
    Kernel.RBF: KernelParams(gamma=0.5),
    Kernel.EUCLIDEAN: KernelParams(),
    Kernel.EXPONENTIAL: KernelParams(gamma=0.5),
    Kernel.MANHATTAN: KernelParams(),
    Kernel.GESD: KernelParams(gamma=0.5, c=0.1),
    Kernel.AESD: KernelParams(gamma=0.5, c=0.1),
}


@dataclass(frozen=True)
class ModelConfig:
    """Keyword attention network settings"""
    dim_embed: int = 32
    dim_hidden: int = 64
    social_mode: SocialMode = SocialMode.DYNAMIC
    kernel: Kernel = Kernel.RBF
    kernel_params: Optional[KernelParams] = None  # None = per-kernel default
    learn_rate: float = 1e-3
    epochs_per_day: int = 5
    batch_size: int = 64
    seed: int = 0

    def __post_init__(self):
        if self.dim_embed < 1:
            raise ValueError(f"dim_embed must be >= 1, got {self.dim_embed}")
        if self.dim_hidden < 1:
            raise ValueError(f"dim_hidden must be >= 1, got {self.dim_hidden}")
        if self.learn_rate <= 0:
            raise ValueError(f"learn_rate must be > 0, got {self.learn_rate}")
        if self.epochs_per_day < 1:
            raise ValueError(f"epochs_per_day must be >= 1, got {self.epochs_per_day}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")

    @property
    def resolved_kernel_params(self) -> KernelParams:
        if self.kernel_params is not None:
            return self.kernel_params
        return DEFAULT_KERNEL_PARAMS[self.kernel]
