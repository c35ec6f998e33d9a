"""Small trainable convolutional encoder producing spatial feature maps."""

from __future__ import annotations

import numpy as np

from ..autodiff import Tensor, add, conv2d, relu, reshape
from ..errors import ShapeMismatch
from .params import ModelConfig


def image_to_input(pixels: np.ndarray) -> Tensor:
    """uint8 (H, W, 3) raster -> float64 input scaled to [0, 1]."""
    return Tensor(pixels.astype(np.float64) / 255.0)


def encode(image: Tensor, params: dict[str, Tensor], config: ModelConfig) -> Tensor:
    """Three stride-2 relu conv layers, flattened to (positions, feature_dim)."""
    if image.data.shape != (*config.canvas, 3):
        raise ShapeMismatch("encode", image.data.shape, (*config.canvas, 3))
    x = image
    for i in range(1, len(config.conv_channels) + 1):
        x = conv2d(x, params[f"encoder.conv{i}.kernel"], stride=2)
        x = add(x, params[f"encoder.conv{i}.bias"])
        x = relu(x)
    return reshape(x, (config.num_positions, config.feature_dim))
