"""Deterministic training loop: teacher-forced MLE plus scheduled self-critical RL."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..autodiff import (
    AdamState,
    Tape,
    Tensor,
    adam_step,
    add_many,
    save_checkpoint,
    scale,
    zero_grads,
)
from ..captions import CaptionRecord, Vocabulary, build_vocab, read_records, tokenize
from ..captions.text import EOS, SPECIAL_TOKENS
from ..errors import InvalidConfig, IoFailure, NonFiniteLoss
from ..figures import RasterImage, mix_seed
from ..metrics import IdfTable, bleu, cider_single
from ..model import Captioner, ModelConfig, init_params
from .losses import EpisodeOutcome, lambda_schedule, loss_hybrid, loss_mle, loss_scst

CAPTION_KINDS = ("high", "detailed")


@dataclass
class TrainConfig:
    data_dir: str = ""
    out_stem: str = ""
    caption_kind: str = "detailed"
    learning_rate: float = 2e-3
    batch_size: int = 16
    max_steps: int = 1000
    lambda_start: int = 10**9  # RL disabled unless the ramp is moved into range
    lambda_end: int = 10**9
    schedule: str = "ramp"
    reward_metric: str = "cider"
    seed: int = 0
    log_every: int = 100
    val_subset: int = 32
    max_train_records: int | None = None
    rl_learning_rate: float | None = None  # lr once the RL blend engages
    stop_bleu4: float | None = None  # early stop once greedy BLEU-4 on train reaches this
    stop_check_every: int = 250
    model: ModelConfig = field(default_factory=ModelConfig)

    def validate(self) -> None:
        if self.learning_rate <= 0:
            raise InvalidConfig("learning_rate must be positive")
        if self.rl_learning_rate is not None and self.rl_learning_rate <= 0:
            raise InvalidConfig("rl_learning_rate must be positive")
        if self.lambda_start > self.lambda_end:
            raise InvalidConfig("lambda schedule start must not exceed end")
        if self.reward_metric != "cider":
            raise InvalidConfig(f"unsupported reward metric {self.reward_metric!r}")
        if self.schedule not in ("ramp", "decay"):
            raise InvalidConfig(f"unknown schedule {self.schedule!r}")
        if self.caption_kind not in CAPTION_KINDS:
            raise InvalidConfig(f"caption_kind must be one of {CAPTION_KINDS}")
        if self.batch_size < 1 or self.max_steps < 1:
            raise InvalidConfig("batch_size and max_steps must be at least 1")


def ids_to_tokens(ids: list[int], vocab: Vocabulary) -> list[str]:
    """Decoded ids to tokens, dropping a trailing EOS."""
    if ids and ids[-1] == EOS:
        ids = ids[:-1]
    return vocab.decode(ids)


def caption_of(record: CaptionRecord, kind: str) -> str:
    return record.high_caption if kind == "high" else record.detailed_caption


@dataclass
class _Sample:
    pixels: np.ndarray
    labels: list[str]
    target_ids: list[int]
    ref_tokens: list[str]


def _load_samples(
    data_dir: str, split: str, kind: str, vocab: Vocabulary | None, limit: int | None
) -> list[_Sample]:
    records = read_records(data_dir, split)
    if limit is not None:
        records = records[:limit]
    samples = []
    for rec in records:
        pixels = RasterImage.load_png(Path(data_dir) / split / rec.image_path).pixels
        ref = tokenize(caption_of(rec, kind))
        ids = vocab.encode(ref) + [EOS] if vocab is not None else []
        samples.append(_Sample(pixels, rec.labels, ids, ref))
    return samples


def rl_episode(
    captioner: Captioner,
    sample: _Sample,
    idf: IdfTable,
    rng_seed: int,
    greedy_ids: list[int],
) -> EpisodeOutcome:
    """Sampled rollout plus rewards against the record's reference."""
    sampled_ids, sampled_logps = captioner.decode_sample(
        sample.pixels, sample.labels, rng_seed=rng_seed
    )
    reward_sampled = cider_single(
        ids_to_tokens(sampled_ids, captioner.vocab), [sample.ref_tokens], idf
    )
    reward_baseline = cider_single(
        ids_to_tokens(greedy_ids, captioner.vocab), [sample.ref_tokens], idf
    )
    return EpisodeOutcome(
        sampled_ids=sampled_ids,
        sampled_logps=sampled_logps,
        greedy_ids=greedy_ids,
        reward_sampled=reward_sampled,
        reward_baseline=reward_baseline,
    )


def _mean_greedy_cider(captioner, samples, idf) -> float:
    if not samples:
        return 0.0
    total = 0.0
    for s in samples:
        ids = captioner.decode_greedy(s.pixels, s.labels)
        total += cider_single(ids_to_tokens(ids, captioner.vocab), [s.ref_tokens], idf)
    return total / len(samples)


def _mean_greedy_bleu4(captioner, samples) -> float:
    total = 0.0
    for s in samples:
        ids = captioner.decode_greedy(s.pixels, s.labels)
        total += bleu(ids_to_tokens(ids, captioner.vocab), [s.ref_tokens], max_n=4)
    return total / len(samples)


def train(config: TrainConfig) -> tuple[dict[str, Tensor], list[dict]]:
    """Run the hybrid objective to max_steps; writes checkpoint and metrics log.

    Fully deterministic in config.seed: batch order, parameter init, and
    sampling seeds all derive from it.
    """
    config.validate()

    train_records = read_records(config.data_dir, "train")
    if config.max_train_records is not None:
        train_records = train_records[: config.max_train_records]
    vocab = build_vocab(caption_of(r, config.caption_kind) for r in train_records)

    model_cfg = config.model
    model_cfg.vocab_size = len(vocab)
    params = init_params(model_cfg, mix_seed(config.seed, 1))
    captioner = Captioner(model_cfg, params, vocab)

    samples = _load_samples(
        config.data_dir, "train", config.caption_kind, vocab, config.max_train_records
    )
    try:
        val_samples = _load_samples(
            config.data_dir, "val", config.caption_kind, vocab, config.val_subset
        )
    except IoFailure:
        val_samples = []
    idf = IdfTable([s.ref_tokens for s in samples])

    shuffle_rng = np.random.default_rng(mix_seed(config.seed, 2))
    adam = AdamState()
    order: list[int] = []
    log: list[dict] = []
    stopped = False

    for step in range(1, config.max_steps + 1):
        batch = []
        for _ in range(config.batch_size):
            if not order:
                order = list(shuffle_rng.permutation(len(samples)))
            batch.append(samples[order.pop()])

        lam = lambda_schedule(step, config.lambda_start, config.lambda_end, config.schedule)

        greedy_batch = None
        if lam > 0.0:
            greedy_batch = [captioner.decode_greedy(s.pixels, s.labels) for s in batch]

        with Tape() as tape:
            sl_terms = []
            rl_terms = []
            for i, s in enumerate(batch):
                episode = captioner.start_episode(s.pixels, s.labels)
                sl_terms.append(
                    loss_mle(captioner.teacher_logps(s.pixels, s.labels, s.target_ids, episode))
                )
                if lam > 0.0:
                    outcome = rl_episode(
                        captioner, s, idf, mix_seed(config.seed, step * 1000 + i), greedy_batch[i]
                    )
                    rl_terms.append(
                        loss_scst(
                            outcome.sampled_logps, outcome.reward_sampled, outcome.reward_baseline
                        )
                    )
            l_sl = scale(add_many(sl_terms), 1.0 / len(sl_terms))
            l_rl = scale(add_many(rl_terms), 1.0 / len(rl_terms)) if rl_terms else Tensor(0.0)
            l_hybrid = loss_hybrid(l_rl, l_sl, lam)

        values = (l_sl.item(), l_rl.item(), l_hybrid.item())
        if not all(np.isfinite(v) for v in values):
            raise NonFiniteLoss(step, values[2])

        tape.backward(l_hybrid)
        grads = {name: t.grad for name, t in params.items() if t.grad is not None}
        lr = config.learning_rate
        if lam > 0.0 and config.rl_learning_rate is not None:
            lr = config.rl_learning_rate
        adam_step(params, grads, adam, lr)
        zero_grads(params.values())

        should_log = step % config.log_every == 0 or step == config.max_steps
        if config.stop_bleu4 is not None and step % config.stop_check_every == 0:
            if _mean_greedy_bleu4(captioner, samples) >= config.stop_bleu4:
                stopped = True
                should_log = True
        if should_log:
            log.append(
                {
                    "step": step,
                    "L_sl": values[0],
                    "L_rl": values[1],
                    "L_hybrid": values[2],
                    "lambda": lam,
                    "val_cider": _mean_greedy_cider(captioner, val_samples, idf),
                }
            )
        if stopped:
            break

    if config.out_stem:
        save_checkpoint(
            config.out_stem,
            params,
            metadata={
                "model_config": model_cfg.to_dict(),
                "vocab": vocab.tokens(),
                "caption_kind": config.caption_kind,
            },
        )
        log_path = Path(str(config.out_stem) + ".train.jsonl")
        try:
            with open(log_path, "w", encoding="utf-8", newline="\n") as fh:
                for entry in log:
                    fh.write(json.dumps(entry) + "\n")
        except OSError as exc:
            raise IoFailure(f"cannot write metrics log: {exc}") from exc

    return params, log
