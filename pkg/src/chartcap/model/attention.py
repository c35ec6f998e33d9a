"""Additive attention over feature, relation, and label maps."""

from __future__ import annotations

import numpy as np

from ..autodiff import (
    Tensor,
    add,
    concat,
    gather_rows,
    matmul,
    mean_pool_all,
    relu,
    repeat_rows,
    reshape,
    softmax,
    tanh,
    tile_rows,
)
from ..captions.text import Vocabulary, tokenize
from ..errors import InvalidConfig, NoAttentionEnabled
from .params import ATTENTION_ORDER


def build_relation_maps(feature_maps: Tensor, params: dict[str, Tensor]) -> Tensor:
    """One vector per ordered position pair: a shared 2-layer MLP on concat(f_i, f_j)."""
    m = feature_maps.data.shape[0]
    left = repeat_rows(feature_maps, m)
    right = tile_rows(feature_maps, m)
    pairs = concat([left, right], axis=1)  # row i*m+j is (f_i, f_j)
    hidden = relu(add(matmul(pairs, params["relation.fc1.weight"]), params["relation.fc1.bias"]))
    return add(matmul(hidden, params["relation.fc2.weight"]), params["relation.fc2.bias"])


def build_label_maps(
    label_names: list[str], vocab: Vocabulary, params: dict[str, Tensor]
) -> Tensor:
    """One embedding vector per label: the mean of its word-token embedding rows.

    Words missing from the vocabulary fall back to the UNK row.
    """
    if not label_names:
        raise InvalidConfig("label maps need at least one label")
    table = params["embedding.table"]
    rows = []
    for name in label_names:
        ids = vocab.encode(tokenize(name))
        vec = mean_pool_all(gather_rows(table, ids))
        rows.append(reshape(vec, (1, table.data.shape[1])))
    return concat(rows, axis=0)


def attend(
    h_prev: Tensor,
    keys: Tensor,
    values: Tensor,
    query_weight: Tensor,
    score_vector: Tensor,
) -> tuple[Tensor, Tensor]:
    """Additive attention: weights over value rows and their weighted sum.

    `keys` is values @ key_weight, precomputed once per episode since it does
    not depend on the decoder state.
    """
    scores = matmul(tanh(add(keys, matmul(h_prev, query_weight))), score_vector)
    weights = softmax(scores, axis=-1)
    return weights, matmul(weights, values)


def _attend_with(prefix: str, h_prev: Tensor, values: Tensor, params) -> tuple[Tensor, Tensor]:
    keys = matmul(values, params[f"{prefix}.key_weight"])
    return attend(h_prev, keys, values, params[f"{prefix}.query_weight"],
                  params[f"{prefix}.score_vector"])


def att_f(h_prev: Tensor, feature_maps: Tensor, params) -> tuple[Tensor, Tensor]:
    """Attention over the m feature vectors."""
    return _attend_with("attn_f", h_prev, feature_maps, params)


def att_r(h_prev: Tensor, relation_maps: Tensor, params) -> tuple[Tensor, Tensor]:
    """Attention over the m^2 relation vectors."""
    return _attend_with("attn_r", h_prev, relation_maps, params)


def att_l(h_prev: Tensor, label_maps: Tensor, params) -> tuple[Tensor, Tensor]:
    """Attention over the n label vectors."""
    return _attend_with("attn_l", h_prev, label_maps, params)


def make_context(contexts: dict[str, Tensor]) -> Tensor:
    """Concatenate enabled attention contexts in fixed (f, r, l) order."""
    parts = [contexts[a] for a in ATTENTION_ORDER if a in contexts]
    if not parts:
        raise NoAttentionEnabled("context requires at least one enabled attention")
    return parts[0] if len(parts) == 1 else concat(parts, axis=0)
