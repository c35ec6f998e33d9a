"""Training and evaluation: losses, schedules, the deterministic loop."""

from .evaluate import evaluate, load_captioner
from .loop import TrainConfig, caption_of, ids_to_tokens, rl_episode, train
from .losses import (
    EpisodeOutcome,
    lambda_schedule,
    loss_hybrid,
    loss_mle,
    loss_scst,
)

__all__ = [
    "EpisodeOutcome",
    "TrainConfig",
    "caption_of",
    "evaluate",
    "ids_to_tokens",
    "lambda_schedule",
    "load_captioner",
    "loss_hybrid",
    "loss_mle",
    "loss_scst",
    "rl_episode",
    "train",
]
