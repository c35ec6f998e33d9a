import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chartcap.captions import DatasetConfig, generate_dataset
from chartcap.model import Captioner, ModelConfig, init_params


TINY_MODEL = dict(
    canvas=(32, 32),
    conv_channels=(6, 8, 10),
    relation_dim=8,
    attn_dim=10,
    hidden_size=14,
    embed_size=8,
    max_len=24,
)


@pytest.fixture(scope="session")
def tiny_dataset(tmp_path_factory):
    """Small on-disk dataset shared across tests: 30/6/6 records at 32x32."""
    root = tmp_path_factory.mktemp("data")
    config = DatasetConfig(counts={"train": 30, "val": 6, "test": 6}, canvas=(32, 32), seed=11)
    generate_dataset(config, root)
    return root


def make_captioner(vocab, attentions=("f", "r", "l"), seed=0, **overrides):
    kwargs = dict(TINY_MODEL)
    kwargs.update(overrides)
    config = ModelConfig(attentions=attentions, vocab_size=len(vocab), **kwargs)
    params = init_params(config, seed)
    return Captioner(config, params, vocab)
