"""The captioning model: encoder, attention maps, LSTM decoder, decoding."""

from .attention import (
    att_f,
    att_l,
    att_r,
    attend,
    build_label_maps,
    build_relation_maps,
    make_context,
)
from .decoder import Captioner, DecoderState, Episode, init_state, lstm_step, predict
from .encoder import encode, image_to_input
from .params import ATTENTION_ORDER, ModelConfig, init_params

__all__ = [
    "ATTENTION_ORDER",
    "Captioner",
    "DecoderState",
    "Episode",
    "ModelConfig",
    "att_f",
    "att_l",
    "att_r",
    "attend",
    "build_label_maps",
    "build_relation_maps",
    "encode",
    "image_to_input",
    "init_params",
    "init_state",
    "lstm_step",
    "make_context",
    "predict",
]
