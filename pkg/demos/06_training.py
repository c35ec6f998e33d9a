#!/usr/bin/env python3
"""End to end at toy scale: generate a dataset, train briefly, evaluate."""

import tempfile
import time
from pathlib import Path

from chartcap.captions import DatasetConfig, generate_dataset
from chartcap.model import ModelConfig
from chartcap.training import TrainConfig, evaluate, train

workdir = Path(tempfile.mkdtemp(prefix="chartcap_demo_"))
data = workdir / "data"
print("workspace:", workdir)

counts = generate_dataset(
    DatasetConfig(counts={"train": 60, "val": 10, "test": 10}, canvas=(32, 32), seed=123),
    data,
)
print("generated:", counts)

config = TrainConfig(
    data_dir=str(data),
    out_stem=str(workdir / "model"),
    caption_kind="high",
    learning_rate=3e-3,
    batch_size=4,
    max_steps=400,
    log_every=100,
    val_subset=5,
    seed=0,
    model=ModelConfig(
        canvas=(32, 32), conv_channels=(8, 12, 16), relation_dim=8,
        attn_dim=24, hidden_size=48, embed_size=24,
        attentions=("f", "l"), max_len=30, linear_logits=True,
    ),
)
t0 = time.time()
_, log = train(config)
print(f"trained {config.max_steps} steps in {time.time() - t0:.0f}s")
for entry in log:
    print(f"  step {entry['step']:4d}  L_sl={entry['L_sl']:7.3f}  val_cider={entry['val_cider']:.3f}")

report = evaluate(workdir / "model", data, "test")
print("\ntest-split report:")
for name, value in report.items():
    print(f"  {name:7s} {value:.4f}")
