"""Training objectives: word-level MLE, self-critical sequence loss, hybrid blend."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..autodiff import Tensor, add_many, neg, scale
from ..errors import EmptySequence, LambdaOutOfRange, MetricMismatch


def loss_mle(logps: list[Tensor]) -> Tensor:
    """Negative sum of per-step target log-probabilities (teacher forcing)."""
    if not logps:
        raise EmptySequence("MLE loss needs at least one step")
    return neg(add_many(logps))


def loss_scst(
    sampled_logps: list[Tensor],
    reward_sampled: float,
    reward_baseline: float,
    metric_sampled: str = "cider",
    metric_baseline: str = "cider",
) -> Tensor:
    """Self-critical loss: -(r_sampled - r_baseline) * sum log p(sampled token).

    The advantage is a constant; no gradient flows through the rewards.
    """
    if metric_sampled != metric_baseline:
        raise MetricMismatch(f"{metric_sampled} vs {metric_baseline}")
    if not sampled_logps:
        raise EmptySequence("SCST loss needs at least one sampled step")
    advantage = float(reward_sampled) - float(reward_baseline)
    return scale(add_many(sampled_logps), -advantage)


def loss_hybrid(l_rl: Tensor, l_sl: Tensor, lam: float) -> Tensor:
    """lam * L_rl + (1 - lam) * L_sl."""
    if not 0.0 <= lam <= 1.0:
        raise LambdaOutOfRange(f"lambda must be in [0, 1], got {lam}")
    return scale(l_rl, lam) + scale(l_sl, 1.0 - lam)


def lambda_schedule(step: int, start: int, end: int, direction: str = "ramp") -> float:
    """RL weight at a training step.

    "ramp" (default) holds 0 through `start`, rises linearly to 1 at `end`,
    then stays 1: MLE warm start followed by pure sequence-level training.
    "decay" is the mirrored schedule (1 down to 0).
    """
    if step < start:
        lam = 0.0
    elif step >= end:
        lam = 1.0
    else:
        lam = (step - start) / (end - start)
    return 1.0 - lam if direction == "decay" else lam


@dataclass
class EpisodeOutcome:
    """Everything one RL episode produced, for logging and tests."""

    sampled_ids: list[int]
    sampled_logps: list[Tensor]
    greedy_ids: list[int]
    reward_sampled: float
    reward_baseline: float
    metric: str = "cider"
