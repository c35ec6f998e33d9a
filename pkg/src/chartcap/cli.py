"""Command-line interface: generate, train, eval, caption, score.

Exit codes: 0 success, 2 usage or config error, 3 I/O failure, 4 numeric
failure. Every run prints a banner with the resolved configuration and seed
to stderr; eval and score print machine-readable JSON to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .captions import DatasetConfig, PRESETS, Vocabulary, detokenize, generate_dataset, tokenize
from .errors import (
    ChartCapError,
    EmptyCorpus,
    InvalidConfig,
    IoFailure,
    LambdaOutOfRange,
    MetricMismatch,
    NoAttentionEnabled,
    NonFiniteLoss,
    NoReferences,
    VocabMismatch,
)
from .figures import RasterImage
from .metrics import score_corpus
from .model import ModelConfig
from .training import TrainConfig, evaluate, ids_to_tokens, load_captioner, train

ATTN_CHOICES = {"off": (), "f": ("f",), "f+l": ("f", "l"), "all": ("f", "r", "l")}

_CONFIG_ERRORS = (
    InvalidConfig,
    NoAttentionEnabled,
    EmptyCorpus,
    LambdaOutOfRange,
    MetricMismatch,
    NoReferences,
)
_IO_ERRORS = (IoFailure, VocabMismatch, OSError)


def _banner(command: str, settings: dict) -> None:
    resolved = " ".join(f"{k}={v}" for k, v in settings.items())
    print(f"[chartcap {command}] {resolved}", file=sys.stderr)


def cmd_generate(args) -> int:
    config = DatasetConfig.from_json_file(args.config) if args.config else DatasetConfig()
    if args.preset:
        config.counts = dict(PRESETS[args.preset])
    if args.seed is not None:
        config.seed = args.seed
    config.validate()
    _banner("generate", {"out": args.out, "seed": config.seed, "counts": config.counts,
                         "canvas": config.canvas, "dry_run": args.dry_run})
    counts = generate_dataset(config, args.out, dry_run=args.dry_run)
    for split in ("train", "val", "test"):
        print(f"{split}: {counts[split]}")
    if args.dry_run:
        print("dry run: no files written")
    return 0


def _train_config_from_args(args) -> TrainConfig:
    config = TrainConfig()
    if args.config:
        try:
            obj = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except OSError as exc:
            raise IoFailure(f"cannot read config {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidConfig(f"config {args.config} is not valid JSON: {exc}") from exc
        model_obj = obj.pop("model", None)
        for key, value in obj.items():
            if not hasattr(config, key):
                raise InvalidConfig(f"unknown train config key {key!r}")
            setattr(config, key, value)
        if model_obj:
            config.model = ModelConfig.from_dict(model_obj)
    config.data_dir = args.data
    config.out_stem = args.out
    if args.seed is not None:
        config.seed = args.seed
    config.model.attentions = ATTN_CHOICES[args.attn]
    config.model.__post_init__()
    if args.rl == "on":
        if config.lambda_start >= 10**9:
            config.lambda_start = (config.max_steps * 3) // 5
            config.lambda_end = (config.max_steps * 4) // 5
    else:
        config.lambda_start = config.lambda_end = 10**9
    return config


def cmd_train(args) -> int:
    config = _train_config_from_args(args)
    _banner("train", {"data": config.data_dir, "out": config.out_stem, "seed": config.seed,
                      "attn": args.attn, "rl": args.rl, "steps": config.max_steps,
                      "caption_kind": config.caption_kind})
    _, log = train(config)
    if log:
        last = log[-1]
        print(f"finished step {last['step']}: L_hybrid={last['L_hybrid']:.4f} "
              f"val_cider={last['val_cider']:.4f}")
    return 0


def cmd_eval(args) -> int:
    _banner("eval", {"ckpt": args.ckpt, "data": args.data, "split": args.split})
    report = evaluate(args.ckpt, args.data, args.split)
    print(json.dumps(report, indent=2))
    return 0


def cmd_caption(args) -> int:
    captioner, _ = load_captioner(args.ckpt)
    labels = [s.strip() for s in (args.labels or "").split(",") if s.strip()]
    if "l" in captioner.config.attentions and not labels:
        raise InvalidConfig("--labels is required when label attention is enabled")
    _banner("caption", {"ckpt": args.ckpt, "image": args.image, "labels": labels})
    for name in labels:
        unknown = [w for w in tokenize(name) if w not in captioner.vocab.token_to_id]
        if unknown:
            print(f"warning: unknown label words {unknown} map to <unk>", file=sys.stderr)
    try:
        image = RasterImage.load_png(args.image)
    except OSError as exc:
        raise IoFailure(f"cannot read image {args.image}: {exc}") from exc
    ids = captioner.decode_greedy(image.pixels, labels)
    print(detokenize(ids_to_tokens(ids, captioner.vocab)))
    return 0


def _read_jsonl(path) -> list[dict]:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    try:
        return [json.loads(line) for line in lines if line.strip()]
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"{path} is not valid JSONL: {exc}") from exc


def cmd_score(args) -> int:
    _banner("score", {"cand": args.cand, "refs": args.refs})
    cand_rows = _read_jsonl(args.cand)
    ref_rows = _read_jsonl(args.refs)
    cands = {row["id"]: row["caption"] for row in cand_rows}
    refs = {}
    for row in ref_rows:
        refs[row["id"]] = row["captions"] if "captions" in row else [row["caption"]]
    if set(cands) != set(refs):
        raise InvalidConfig("candidate and reference ids do not match")
    order = sorted(cands)
    candidates = [tokenize(cands[i]) for i in order]
    references = [[tokenize(r) for r in refs[i]] for i in order]
    report = score_corpus(candidates, references)
    print(json.dumps(report, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chartcap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a dataset of figures and captions")
    p.add_argument("--config", help="dataset config JSON")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--preset", choices=sorted(PRESETS), help="split-size preset")
    p.add_argument("--seed", type=int, help="master seed override")
    p.add_argument("--dry-run", action="store_true", help="print split counts only")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("train", help="train a captioner")
    p.add_argument("--data", required=True, help="dataset directory")
    p.add_argument("--config", help="train config JSON")
    p.add_argument("--out", required=True, help="checkpoint stem")
    p.add_argument("--attn", choices=sorted(ATTN_CHOICES), default="all")
    p.add_argument("--rl", choices=["on", "off"], default="off")
    p.add_argument("--seed", type=int, help="seed override")
    p.set_defaults(fn=cmd_train)

    p = sub.add_parser("eval", help="evaluate a checkpoint on a split")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--split", choices=["val", "test"], required=True)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("caption", help="caption one figure image")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--image", required=True)
    p.add_argument("--labels", help="comma-separated label names")
    p.set_defaults(fn=cmd_caption)

    p = sub.add_parser("score", help="score candidate captions against references")
    p.add_argument("--cand", required=True, help="candidates JSONL with id and caption")
    p.add_argument("--refs", required=True, help="references JSONL with id and captions")
    p.set_defaults(fn=cmd_score)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NonFiniteLoss as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except _CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _IO_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ChartCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
