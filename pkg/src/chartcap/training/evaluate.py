"""Checkpoint evaluation: greedy-decode a split and report all seven metrics."""

from __future__ import annotations

from pathlib import Path

from ..autodiff import load_checkpoint
from ..captions import Vocabulary, read_records, tokenize
from ..errors import VocabMismatch
from ..figures import RasterImage
from ..metrics import score_corpus
from ..model import Captioner, ModelConfig
from .loop import caption_of, ids_to_tokens


def load_captioner(ckpt_stem) -> tuple[Captioner, dict]:
    params, manifest = load_checkpoint(ckpt_stem)
    config = ModelConfig.from_dict(manifest["model_config"])
    vocab = Vocabulary(manifest["vocab"])
    if len(vocab) != config.vocab_size or params["embedding.table"].data.shape[0] != len(vocab):
        raise VocabMismatch(
            f"vocab has {len(vocab)} tokens but checkpoint expects {config.vocab_size}"
        )
    return Captioner(config, params, vocab), manifest


def evaluate(ckpt_stem, data_dir, split: str, caption_kind: str | None = None) -> dict[str, float]:
    """Greedy-decode every record of the split and score against its caption."""
    captioner, manifest = load_captioner(ckpt_stem)
    kind = caption_kind or manifest.get("caption_kind", "detailed")
    records = read_records(data_dir, split)
    candidates = []
    references = []
    for rec in records:
        pixels = RasterImage.load_png(Path(data_dir) / split / rec.image_path).pixels
        ids = captioner.decode_greedy(pixels, rec.labels)
        candidates.append(ids_to_tokens(ids, captioner.vocab))
        references.append([tokenize(caption_of(rec, kind))])
    return score_corpus(candidates, references)
