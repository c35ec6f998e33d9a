"""LSTM decoder with maxout cell, context-conditioned gates, and decoding loops."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..autodiff import (
    Tensor,
    add,
    add_many,
    concat,
    log,
    matmul,
    maxout,
    mean_pool_all,
    mul,
    sigmoid,
    slice_,
    softmax,
    tanh,
)
from ..captions.text import BOS, EOS, Vocabulary
from .attention import attend, build_label_maps, build_relation_maps, make_context
from .encoder import encode, image_to_input
from .params import ModelConfig


@dataclass
class DecoderState:
    hidden: Tensor
    cell: Tensor
    step: int = 0


def init_state(feature_maps: Tensor, params: dict[str, Tensor]) -> DecoderState:
    """Mean-pooled features squashed into the initial cell and hidden vectors."""
    pooled = mean_pool_all(feature_maps)
    cell = sigmoid(matmul(pooled, params["init.cell_weight"]))
    hidden = sigmoid(matmul(pooled, params["init.hidden_weight"]))
    return DecoderState(hidden=hidden, cell=cell, step=0)


def _gate(params, name, embed, hidden, ctx):
    return add_many(
        [
            matmul(embed, params[f"lstm.{name}_embed"]),
            matmul(hidden, params[f"lstm.{name}_hidden"]),
            matmul(ctx, params[f"lstm.{name}_ctx"]),
            params[f"lstm.{name}_bias"],
        ]
    )


def lstm_step(
    embed: Tensor, state: DecoderState, ctx: Tensor, params: dict[str, Tensor]
) -> DecoderState:
    """One recurrence: sigmoid gates, 2-piece maxout cell candidate, tanh output."""
    i = sigmoid(_gate(params, "i", embed, state.hidden, ctx))
    f = sigmoid(_gate(params, "f", embed, state.hidden, ctx))
    o = sigmoid(_gate(params, "o", embed, state.hidden, ctx))
    candidate = maxout(
        _gate(params, "cell1", embed, state.hidden, ctx),
        _gate(params, "cell2", embed, state.hidden, ctx),
    )
    cell = add(mul(i, candidate), mul(f, state.cell))
    hidden = mul(o, tanh(cell))
    return DecoderState(hidden=hidden, cell=cell, step=state.step + 1)


def predict(
    hidden: Tensor, ctx: Tensor, params: dict[str, Tensor], linear_logits: bool = False
) -> Tensor:
    """Next-token distribution; logits pass through a sigmoid before softmax
    unless linear_logits is set."""
    logits = add(matmul(hidden, params["out.hidden_weight"]), matmul(ctx, params["out.ctx_weight"]))
    if not linear_logits:
        logits = sigmoid(logits)
    return softmax(logits, axis=-1)


_GATES = ("i", "f", "o", "cell1", "cell2")


@dataclass
class Episode:
    """Per-figure tensors reused across decode steps.

    gate_weights and out_weight are the per-gate [embed; hidden; ctx] weight
    blocks concatenated once per episode, so each step runs one matmul per
    gate instead of three; gradients flow back to the original parameters
    through the concat.
    """

    feature_maps: Tensor
    state: DecoderState
    attn: list[tuple[str, Tensor, Tensor, Tensor, Tensor]]  # (kind, keys, values, query_w, score_v)
    gate_weights: dict[str, Tensor]
    out_weight: Tensor
    zero_ctx: Tensor
    zero_embed: Tensor


class Captioner:
    """Ties encoder, attentions, and decoder together for one parameter set."""

    def __init__(self, config: ModelConfig, params: dict[str, Tensor], vocab: Vocabulary):
        self.config = config
        self.params = params
        self.vocab = vocab

    def start_episode(self, pixels: np.ndarray, labels: list[str]) -> Episode:
        params = self.params
        feature_maps = encode(image_to_input(pixels), params, self.config)
        attn = []
        for kind in self.config.attentions:
            if kind == "f":
                values = feature_maps
            elif kind == "r":
                values = build_relation_maps(feature_maps, params)
            else:
                values = build_label_maps(labels, self.vocab, params)
            prefix = f"attn_{kind}"
            keys = matmul(values, params[f"{prefix}.key_weight"])
            attn.append(
                (kind, keys, values, params[f"{prefix}.query_weight"], params[f"{prefix}.score_vector"])
            )
        gate_weights = {
            g: concat(
                [params[f"lstm.{g}_embed"], params[f"lstm.{g}_hidden"], params[f"lstm.{g}_ctx"]],
                axis=0,
            )
            for g in _GATES
        }
        out_weight = concat([params["out.hidden_weight"], params["out.ctx_weight"]], axis=0)
        return Episode(
            feature_maps=feature_maps,
            state=init_state(feature_maps, params),
            attn=attn,
            gate_weights=gate_weights,
            out_weight=out_weight,
            zero_ctx=Tensor(np.zeros(0)),
            zero_embed=Tensor(np.zeros(self.config.embed_size)),
        )

    def fork_episode(self, episode: Episode) -> Episode:
        """Fresh decoder state over the same encoded maps (shared tape nodes)."""
        return Episode(
            feature_maps=episode.feature_maps,
            state=init_state(episode.feature_maps, self.params),
            attn=episode.attn,
            gate_weights=episode.gate_weights,
            out_weight=episode.out_weight,
            zero_ctx=episode.zero_ctx,
            zero_embed=episode.zero_embed,
        )

    def step_context(self, episode: Episode) -> tuple[Tensor, dict[str, np.ndarray]]:
        """Context vector for the next step, from the current hidden state."""
        if not episode.attn:
            return episode.zero_ctx, {}
        contexts: dict[str, Tensor] = {}
        weights: dict[str, np.ndarray] = {}
        for kind, keys, values, query_w, score_v in episode.attn:
            w, ctx = attend(episode.state.hidden, keys, values, query_w, score_v)
            contexts[kind] = ctx
            weights[kind] = w.data
        return make_context(contexts), weights

    def _embed_prev(self, episode: Episode, prev_id: int) -> Tensor:
        # the first step feeds a zero vector instead of a token embedding
        if prev_id == BOS and episode.state.step == 0:
            return episode.zero_embed
        return slice_(self.params["embedding.table"], prev_id)

    def advance(self, episode: Episode, prev_id: int) -> tuple[Tensor, dict[str, np.ndarray]]:
        """One decode step; returns the next-token distribution.

        Equivalent to lstm_step + predict but runs each gate as a single
        matmul over the fused [embed; hidden; ctx] input.
        """
        ctx, weights = self.step_context(episode)
        embed = self._embed_prev(episode, prev_id)
        state = episode.state
        params = self.params

        x = concat([embed, state.hidden, ctx], axis=0)
        pre = {
            g: add(matmul(x, episode.gate_weights[g]), params[f"lstm.{g}_bias"]) for g in _GATES
        }
        i, f, o = sigmoid(pre["i"]), sigmoid(pre["f"]), sigmoid(pre["o"])
        cell = add(mul(i, maxout(pre["cell1"], pre["cell2"])), mul(f, state.cell))
        hidden = mul(o, tanh(cell))
        episode.state = DecoderState(hidden=hidden, cell=cell, step=state.step + 1)

        logits = matmul(concat([hidden, ctx], axis=0), episode.out_weight)
        if not self.config.linear_logits:
            logits = sigmoid(logits)
        probs = softmax(logits, axis=-1)
        return probs, weights

    def teacher_logps(
        self, pixels, labels, target_ids: list[int], episode: Episode | None = None
    ) -> list[Tensor]:
        """Log-probability of each target token under teacher forcing.

        Pass an existing episode to reuse its encoded maps with a fresh state.
        """
        episode = self.start_episode(pixels, labels) if episode is None else self.fork_episode(episode)
        prev = BOS
        logps = []
        for target in target_ids:
            probs, _ = self.advance(episode, prev)
            logps.append(slice_(log(probs), target))
            prev = target
        return logps

    def decode_greedy(
        self, pixels, labels, max_len: int | None = None, collect_weights: bool = False
    ):
        """Argmax decoding (ties to the lowest id); stops at EOS or max_len."""
        max_len = self.config.max_len if max_len is None else max_len
        episode = self.start_episode(pixels, labels)
        prev = BOS
        out: list[int] = []
        traces: list[dict[str, np.ndarray]] = []
        for _ in range(max_len):
            probs, weights = self.advance(episode, prev)
            token = int(np.argmax(probs.data))
            out.append(token)
            if collect_weights:
                traces.append(weights)
            if token == EOS:
                break
            prev = token
        return (out, traces) if collect_weights else out

    def decode_sample(
        self,
        pixels,
        labels,
        max_len: int | None = None,
        rng_seed: int = 0,
        episode: Episode | None = None,
    ):
        """Multinomial decoding; returns (token ids, per-step log-prob tensors)."""
        max_len = self.config.max_len if max_len is None else max_len
        rng = np.random.default_rng(rng_seed)
        episode = self.start_episode(pixels, labels) if episode is None else self.fork_episode(episode)
        prev = BOS
        out: list[int] = []
        logps: list[Tensor] = []
        for _ in range(max_len):
            probs, _ = self.advance(episode, prev)
            cdf = np.cumsum(probs.data)
            token = int(min(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"),
                            len(cdf) - 1))
            out.append(token)
            logps.append(slice_(log(probs), token))
            if token == EOS:
                break
            prev = token
        return out, logps
