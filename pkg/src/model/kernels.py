"""
Similarity Kernels
Static social attention scores delta(v, v_j) with their gradients
"""

from typing import Tuple

import numpy as np
from scipy.special import expit

from .config import Kernel, KernelParams

KernelResult = Tuple[float, np.ndarray, np.ndarray]


def _zero(x: np.ndarray, y: np.ndarray) -> KernelResult:
    return 0.0, np.zeros_like(x), np.zeros_like(y)


def _distance_terms(x: np.ndarray, y: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    """E = 1 / (1 + ||x - y||) and its gradients"""
    diff = x - y
    r = float(np.linalg.norm(diff))
    e = 1.0 / (1.0 + r)
    if r == 0.0:
        return e, np.zeros_like(x), np.zeros_like(y)
    gx = -e * e * diff / r
    return e, gx, -gx


def _sigmoid_terms(x: np.ndarray, y: np.ndarray, p: KernelParams) -> Tuple[float, np.ndarray, np.ndarray]:
    """S = sigma(gamma (x.y + c)) and its gradients"""
    s = float(expit(p.gamma * (x @ y + p.c)))
    scale = s * (1.0 - s) * p.gamma
    return s, scale * y, scale * x


def similarity_with_grad(kernel: Kernel, x: np.ndarray, y: np.ndarray, p: KernelParams) -> KernelResult:
    """
    Evaluate a kernel and its gradients with respect to both arguments

    Args:
        kernel: Similarity function
        x: User vector
        y: Friend vector
        p: Kernel parameters

    Returns:
        (similarity, d/dx, d/dy)
    """
    if kernel is Kernel.COSINE:
        nx, ny = float(np.linalg.norm(x)), float(np.linalg.norm(y))
        if nx == 0.0 or ny == 0.0:
            return _zero(x, y)
        s = float(x @ y) / (nx * ny)
        gx = y / (nx * ny) - s * x / (nx * nx)
        gy = x / (nx * ny) - s * y / (ny * ny)
        return s, gx, gy

    if kernel is Kernel.POLYNOMIAL:
        t = p.gamma * float(x @ y) + p.c
        d = int(p.d)
        s = t ** d
        scale = d * t ** (d - 1) * p.gamma
        return s, scale * y, scale * x

    if kernel is Kernel.SIGMOID:
        s = float(np.tanh(p.gamma * float(x @ y) + p.c))
        scale = (1.0 - s * s) * p.gamma
        return s, scale * y, scale * x

    if kernel is Kernel.RBF:
        diff = x - y
        s = float(np.exp(-p.gamma * float(diff @ diff)))
        gx = -2.0 * p.gamma * s * diff
        return s, gx, -gx

    if kernel is Kernel.EUCLIDEAN:
        return _distance_terms(x, y)

    if kernel is Kernel.EXPONENTIAL:
        diff = x - y
        s = float(np.exp(-p.gamma * np.abs(diff).sum()))
        gx = -p.gamma * s * np.sign(diff)
        return s, gx, -gx

    if kernel is Kernel.MANHATTAN:
        diff = x - y
        s = 1.0 / (1.0 + float(np.abs(diff).sum()))
        gx = -s * s * np.sign(diff)
        return s, gx, -gx

    if kernel in (Kernel.GESD, Kernel.AESD):
        if not np.any(x) or not np.any(y):
            return _zero(x, y)
        e, ex, ey = _distance_terms(x, y)
        sg, sx, sy = _sigmoid_terms(x, y, p)
        if kernel is Kernel.GESD:
            return e * sg, ex * sg + e * sx, ey * sg + e * sy
        return e + sg, ex + sx, ey + sy

    raise ValueError(f"unknown kernel {kernel}")


def similarity(kernel: Kernel, x: np.ndarray, y: np.ndarray, p: KernelParams) -> float:
    """Kernel value only"""
    return similarity_with_grad(kernel, x, y, p)[0]
