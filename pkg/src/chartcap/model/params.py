"""Model configuration and parameter initialization."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..autodiff import Tensor
from ..errors import InvalidConfig

ATTENTION_ORDER = ("f", "r", "l")


@dataclass
class ModelConfig:
    canvas: tuple[int, int] = (64, 64)
    conv_channels: tuple[int, int, int] = (16, 24, 32)
    kernel_size: int = 3
    relation_dim: int = 24
    attn_dim: int = 32
    hidden_size: int = 64
    embed_size: int = 32
    attentions: tuple[str, ...] = ("f", "r", "l")
    vocab_size: int = 4
    max_len: int = 60
    linear_logits: bool = False

    def __post_init__(self):
        self.attentions = tuple(a for a in ATTENTION_ORDER if a in self.attentions)
        if self.kernel_size % 2 == 0:
            raise InvalidConfig("kernel_size must be odd")
        unknown = set(self.attentions) - set(ATTENTION_ORDER)
        if unknown:
            raise InvalidConfig(f"unknown attentions {sorted(unknown)}")

    @property
    def feature_dim(self) -> int:
        return self.conv_channels[-1]

    @property
    def grid_shape(self) -> tuple[int, int]:
        h, w = self.canvas
        for _ in self.conv_channels:
            h, w = -(-h // 2), -(-w // 2)
        return h, w

    @property
    def num_positions(self) -> int:
        gh, gw = self.grid_shape
        return gh * gw

    @property
    def context_dim(self) -> int:
        dim = 0
        if "f" in self.attentions:
            dim += self.feature_dim
        if "r" in self.attentions:
            dim += self.relation_dim
        if "l" in self.attentions:
            dim += self.embed_size
        return dim

    def to_dict(self) -> dict:
        return {
            "canvas": list(self.canvas),
            "conv_channels": list(self.conv_channels),
            "kernel_size": self.kernel_size,
            "relation_dim": self.relation_dim,
            "attn_dim": self.attn_dim,
            "hidden_size": self.hidden_size,
            "embed_size": self.embed_size,
            "attentions": list(self.attentions),
            "vocab_size": self.vocab_size,
            "max_len": self.max_len,
            "linear_logits": self.linear_logits,
        }

    @staticmethod
    def from_dict(obj: dict) -> "ModelConfig":
        cfg = ModelConfig()
        for key, value in obj.items():
            if not hasattr(cfg, key):
                raise InvalidConfig(f"unknown model config key {key!r}")
            if isinstance(getattr(cfg, key), tuple):
                value = tuple(value)
            setattr(cfg, key, value)
        cfg.__post_init__()
        return cfg


def _glorot(rng: np.random.Generator, shape: Sequence[int], fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / max(1, fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def init_params(config: ModelConfig, seed: int) -> dict[str, Tensor]:
    """Every learnable weight of the full model, deterministically initialized.

    All symbols exist regardless of which attentions are enabled; disabled
    branches simply never touch theirs.
    """
    rng = np.random.default_rng(seed)
    k = config.kernel_size
    d = config.feature_dim
    dh = config.relation_dim
    a = config.attn_dim
    hid = config.hidden_size
    emb = config.embed_size
    ctx = config.context_dim
    vocab = config.vocab_size

    p: dict[str, np.ndarray] = {}

    cin = 3
    for i, cout in enumerate(config.conv_channels, start=1):
        p[f"encoder.conv{i}.kernel"] = _glorot(rng, (k, k, cin, cout), k * k * cin, k * k * cout)
        p[f"encoder.conv{i}.bias"] = np.zeros(cout)
        cin = cout

    p["relation.fc1.weight"] = _glorot(rng, (2 * d, dh), 2 * d, dh)
    p["relation.fc1.bias"] = np.zeros(dh)
    p["relation.fc2.weight"] = _glorot(rng, (dh, dh), dh, dh)
    p["relation.fc2.bias"] = np.zeros(dh)

    for prefix, in_dim in (("attn_f", d), ("attn_r", dh), ("attn_l", emb)):
        p[f"{prefix}.key_weight"] = _glorot(rng, (in_dim, a), in_dim, a)
        p[f"{prefix}.query_weight"] = _glorot(rng, (hid, a), hid, a)
        p[f"{prefix}.score_vector"] = _glorot(rng, (a,), a, 1)

    p["init.cell_weight"] = _glorot(rng, (d, hid), d, hid)
    p["init.hidden_weight"] = _glorot(rng, (d, hid), d, hid)

    for gate in ("i", "f", "o", "cell1", "cell2"):
        p[f"lstm.{gate}_embed"] = _glorot(rng, (emb, hid), emb, hid)
        p[f"lstm.{gate}_hidden"] = _glorot(rng, (hid, hid), hid, hid)
        p[f"lstm.{gate}_ctx"] = _glorot(rng, (ctx, hid), ctx, hid)
        p[f"lstm.{gate}_bias"] = np.zeros(hid)

    p["out.hidden_weight"] = _glorot(rng, (hid, vocab), hid, vocab)
    p["out.ctx_weight"] = _glorot(rng, (ctx, vocab), ctx, vocab)
    p["embedding.table"] = rng.uniform(-0.1, 0.1, size=(vocab, emb))

    return {name: Tensor(data, requires_grad=True) for name, data in p.items()}
