"""Dataset generation: figures to disk as PNG + captions.jsonl splits."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import InvalidConfig, IoFailure
from ..figures import (
    FIGURE_TYPES,
    FigureType,
    RelationFact,
    RelationKind,
    extract_relations,
    mix_seed,
    render,
    sample_figure_spec,
)
from ..figures.render import MIN_CANVAS
from .templates import DEFAULT_PAIRWISE_CAP, render_detailed_caption, render_high_caption

SPLITS = ("train", "val", "test")

PRESETS = {
    "paper": {"train": 99_360, "val": 5_000, "test": 5_152},
    "desk": {"train": 2_000, "val": 200, "test": 200},
}


@dataclass
class DatasetConfig:
    counts: dict[str, int] = field(default_factory=lambda: dict(PRESETS["desk"]))
    canvas: tuple[int, int] = (64, 64)
    seed: int = 0
    max_series: int = 7
    pairwise_cap: int = DEFAULT_PAIRWISE_CAP

    def validate(self) -> None:
        if set(self.counts) != set(SPLITS):
            raise InvalidConfig(f"counts must cover exactly {SPLITS}")
        if any(n < 0 for n in self.counts.values()):
            raise InvalidConfig("split counts must be nonnegative")
        if self.counts["train"] == 0:
            raise InvalidConfig("training split must be nonempty")
        if min(self.canvas) < MIN_CANVAS:
            raise InvalidConfig(f"canvas must be at least {MIN_CANVAS}x{MIN_CANVAS}")
        if self.max_series < 2:
            raise InvalidConfig("max_series must be at least 2")
        if self.pairwise_cap < 1:
            raise InvalidConfig("pairwise_cap must be at least 1")

    @staticmethod
    def from_json_file(path) -> "DatasetConfig":
        try:
            obj = json.loads(Path(path).read_text())
        except OSError as exc:
            raise IoFailure(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidConfig(f"config {path} is not valid JSON: {exc}") from exc
        known = {"counts", "canvas", "seed", "max_series", "pairwise_cap"}
        unknown = set(obj) - known
        if unknown:
            raise InvalidConfig(f"unknown config keys: {sorted(unknown)}")
        cfg = DatasetConfig()
        if "counts" in obj:
            cfg.counts = {k: int(v) for k, v in obj["counts"].items()}
        if "canvas" in obj:
            cfg.canvas = (int(obj["canvas"][0]), int(obj["canvas"][1]))
        for key in ("seed", "max_series", "pairwise_cap"):
            if key in obj:
                setattr(cfg, key, int(obj[key]))
        return cfg


@dataclass
class CaptionRecord:
    id: int
    figure_type: str
    labels: list[str]
    high_caption: str
    detailed_caption: str
    relations: list[RelationFact]
    seed: int
    image_path: str

    def to_json(self) -> str:
        obj = {
            "id": self.id,
            "figure_type": self.figure_type,
            "labels": self.labels,
            "high_caption": self.high_caption,
            "detailed_caption": self.detailed_caption,
            "relations": [
                {"kind": f.kind.value, "subject": f.subject, "object": f.object}
                for f in self.relations
            ],
            "seed": self.seed,
            "image_path": self.image_path,
        }
        return json.dumps(obj)

    @staticmethod
    def from_json(line: str) -> "CaptionRecord":
        obj = json.loads(line)
        return CaptionRecord(
            id=obj["id"],
            figure_type=obj["figure_type"],
            labels=obj["labels"],
            high_caption=obj["high_caption"],
            detailed_caption=obj["detailed_caption"],
            relations=[
                RelationFact(RelationKind(r["kind"]), r["subject"], r["object"])
                for r in obj["relations"]
            ],
            seed=obj["seed"],
            image_path=obj["image_path"],
        )


def build_record(config: DatasetConfig, split_seed: int, index: int) -> tuple[CaptionRecord, "object"]:
    """Materialize one record (and its raster) from per-record seeds."""
    rec_seed = mix_seed(split_seed, index)
    figure_type = FIGURE_TYPES[index % len(FIGURE_TYPES)]
    spec = sample_figure_spec(rec_seed, figure_type, config.max_series, config.canvas)
    facts = extract_relations(spec)
    caption_seed = mix_seed(rec_seed, 2)
    high = render_high_caption(spec, caption_seed)
    detailed = render_detailed_caption(spec, facts, caption_seed, config.pairwise_cap)
    record = CaptionRecord(
        id=index,
        figure_type=figure_type.value,
        labels=spec.labels,
        high_caption=high,
        detailed_caption=detailed,
        relations=facts,
        seed=rec_seed,
        image_path=f"images/{index:06d}.png",
    )
    return record, spec


def generate_dataset(config: DatasetConfig, out_dir, dry_run: bool = False) -> dict[str, int]:
    """Write train/val/test splits under out_dir; returns per-split counts.

    Figure types rotate per record index, so per-type counts stay within one
    of count/5. Every byte on disk is a pure function of the config.
    """
    config.validate()
    if dry_run:
        return dict(config.counts)

    out = Path(out_dir)
    try:
        for split_index, split in enumerate(SPLITS):
            split_dir = out / split
            (split_dir / "images").mkdir(parents=True, exist_ok=True)
            split_seed = mix_seed(config.seed, split_index)
            with open(split_dir / "captions.jsonl", "w", encoding="utf-8", newline="\n") as fh:
                for i in range(config.counts[split]):
                    record, spec = build_record(config, split_seed, i)
                    render(spec).save_png(split_dir / record.image_path)
                    fh.write(record.to_json() + "\n")
    except OSError as exc:
        raise IoFailure(f"dataset write failed: {exc}") from exc
    return dict(config.counts)


def read_records(data_dir, split: str) -> list[CaptionRecord]:
    path = Path(data_dir) / split / "captions.jsonl"
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    return [CaptionRecord.from_json(line) for line in lines if line]
