"""Tape-based reverse-mode autodiff, Adam, gradient checks, checkpoints."""

from .adam import AdamState, adam_step
from .checkpoint import load_checkpoint, save_checkpoint
from .gradcheck import gradcheck, numeric_grad
from .tensor import (
    Tape,
    Tensor,
    add,
    add_many,
    concat,
    conv2d,
    gather_rows,
    log,
    matmul,
    maxout,
    mean_pool_all,
    mul,
    neg,
    parameter,
    relu,
    repeat_rows,
    reshape,
    scale,
    sigmoid,
    slice_,
    softmax,
    sub,
    sum_all,
    tanh,
    tile_rows,
    zero_grads,
)

__all__ = [
    "AdamState",
    "Tape",
    "Tensor",
    "adam_step",
    "add",
    "add_many",
    "concat",
    "conv2d",
    "gather_rows",
    "gradcheck",
    "load_checkpoint",
    "log",
    "matmul",
    "maxout",
    "mean_pool_all",
    "mul",
    "neg",
    "numeric_grad",
    "parameter",
    "relu",
    "repeat_rows",
    "reshape",
    "save_checkpoint",
    "scale",
    "sigmoid",
    "slice_",
    "softmax",
    "sub",
    "sum_all",
    "tanh",
    "tile_rows",
    "zero_grads",
]
