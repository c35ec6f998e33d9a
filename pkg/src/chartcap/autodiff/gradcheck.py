"""Finite-difference gradient checking for tape-recorded computations."""

from __future__ import annotations

import numpy as np

from .tensor import Tape, Tensor


def numeric_grad(fn, inputs: list[Tensor], index: int, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of the scalar fn w.r.t. inputs[index]."""
    x = inputs[index]
    grad = np.zeros_like(x.data)
    flat = x.data.ravel()
    gflat = grad.ravel()
    for i in range(flat.size):
        keep = flat[i]
        flat[i] = keep + h
        up = fn(*inputs).item()
        flat[i] = keep - h
        down = fn(*inputs).item()
        flat[i] = keep
        gflat[i] = (up - down) / (2.0 * h)
    return grad


def gradcheck(fn, inputs: list[Tensor], h: float = 1e-6) -> float:
    """Max relative error between tape gradients and central differences.

    fn maps the input tensors to a scalar Tensor. Relative error uses
    max(1, |analytic|, |numeric|) per element so tiny gradients compare
    on an absolute scale.
    """
    for x in inputs:
        x.requires_grad = True
        x.grad = None
    with Tape() as tape:
        loss = fn(*inputs)
    tape.backward(loss)

    worst = 0.0
    for i, x in enumerate(inputs):
        analytic = x.grad if x.grad is not None else np.zeros_like(x.data)
        numeric = numeric_grad(fn, inputs, i, h)
        denom = np.maximum(1.0, np.maximum(np.abs(analytic), np.abs(numeric)))
        err = np.abs(analytic - numeric) / denom
        if err.size:
            worst = max(worst, float(err.max()))
    return worst
