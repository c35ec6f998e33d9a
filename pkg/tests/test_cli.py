import hashlib
import json
from pathlib import Path

import pytest

from chartcap.cli import main
from chartcap.model import ModelConfig
from chartcap.training import TrainConfig, train
from conftest import TINY_MODEL


def tree_checksum(root: Path) -> str:
    digest = hashlib.sha256()
    for path in sorted(root.rglob("*")):
        if path.is_file():
            digest.update(path.relative_to(root).as_posix().encode())
            digest.update(path.read_bytes())
    return digest.hexdigest()


@pytest.fixture(scope="module")
def cli_dataset(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli_data")
    code = main([
        "generate", "--out", str(out),
        "--config", _write_config(tmp_path_factory.mktemp("cfg")),
        "--seed", "3",
    ])
    assert code == 0
    return out


def _write_config(dirpath: Path) -> str:
    path = dirpath / "gen.json"
    path.write_text(json.dumps({
        "counts": {"train": 20, "val": 5, "test": 5},
        "canvas": [32, 32],
        "seed": 3,
    }))
    return str(path)


@pytest.fixture(scope="module")
def cli_checkpoint(cli_dataset, tmp_path_factory):
    out = tmp_path_factory.mktemp("cli_ckpt") / "model"
    config = TrainConfig(
        data_dir=str(cli_dataset),
        out_stem=str(out),
        caption_kind="high",
        batch_size=4,
        max_steps=8,
        log_every=4,
        val_subset=2,
        seed=1,
        model=ModelConfig(attentions=("f", "l"), **TINY_MODEL),
    )
    train(config)
    return out


def test_generate_dry_run_prints_paper_counts(tmp_path, capsys):
    code = main(["generate", "--out", str(tmp_path / "x"), "--preset", "paper", "--dry-run"])
    out = capsys.readouterr().out
    assert code == 0
    assert "train: 99360" in out
    assert "val: 5000" in out
    assert "test: 5152" in out
    assert not (tmp_path / "x").exists()


def test_generate_missing_out_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["generate", "--preset", "desk"])
    assert err.value.code == 2


def test_generate_deterministic_tree(tmp_path, capsys):
    cfg = _write_config(tmp_path)
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["generate", "--out", str(a), "--config", cfg]) == 0
    assert main(["generate", "--out", str(b), "--config", cfg]) == 0
    assert tree_checksum(a) == tree_checksum(b)


def test_generate_invalid_config_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"counts": {"train": 5}}))
    assert main(["generate", "--out", str(tmp_path / "x"), "--config", str(bad)]) == 2


def test_generate_unknown_config_key_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"splits": {}}))
    assert main(["generate", "--out", str(tmp_path / "x"), "--config", str(bad)]) == 2


def test_attn_none_rejected_by_parser(cli_dataset, tmp_path, capsys):
    with pytest.raises(SystemExit) as err:
        main(["train", "--data", str(cli_dataset), "--out", str(tmp_path / "m"),
              "--attn", "none"])
    assert err.value.code == 2


def test_eval_reports_seven_metrics(cli_checkpoint, cli_dataset, capsys):
    code = main(["eval", "--ckpt", str(cli_checkpoint), "--data", str(cli_dataset),
                 "--split", "val"])
    captured = capsys.readouterr()
    assert code == 0
    report = json.loads(captured.out)
    assert list(report) == ["CIDEr", "BLEU1", "BLEU2", "BLEU3", "BLEU4", "METEOR", "ROUGE"]


def test_eval_corrupt_checkpoint_exits_3(cli_dataset, tmp_path, capsys):
    stem = tmp_path / "broken"
    stem.with_suffix(".json").write_text("{not json")
    stem.with_suffix(".bin").write_bytes(b"")
    code = main(["eval", "--ckpt", str(stem), "--data", str(cli_dataset), "--split", "val"])
    assert code == 3


def test_caption_command_deterministic(cli_checkpoint, cli_dataset, capsys):
    records = (cli_dataset / "val" / "captions.jsonl").read_text().splitlines()
    rec = json.loads(records[0])
    image = cli_dataset / "val" / rec["image_path"]
    args = ["caption", "--ckpt", str(cli_checkpoint), "--image", str(image),
            "--labels", ",".join(rec["labels"])]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second


def test_caption_missing_labels_exits_2(cli_checkpoint, cli_dataset, capsys):
    records = (cli_dataset / "val" / "captions.jsonl").read_text().splitlines()
    rec = json.loads(records[0])
    image = cli_dataset / "val" / rec["image_path"]
    code = main(["caption", "--ckpt", str(cli_checkpoint), "--image", str(image)])
    assert code == 2


def test_caption_unknown_label_warns(cli_checkpoint, cli_dataset, capsys):
    records = (cli_dataset / "val" / "captions.jsonl").read_text().splitlines()
    rec = json.loads(records[0])
    image = cli_dataset / "val" / rec["image_path"]
    code = main(["caption", "--ckpt", str(cli_checkpoint), "--image", str(image),
                 "--labels", "Zubrowka"])
    captured = capsys.readouterr()
    assert code == 0
    assert "unknown label words" in captured.err


def test_score_identical_files_perfect_bleu(tmp_path, capsys):
    cand = tmp_path / "cand.jsonl"
    refs = tmp_path / "refs.jsonl"
    rows = [
        {"id": 0, "caption": "this is a line plot . it contains 3 lines ."},
        {"id": 1, "caption": "red is greater than blue ."},
    ]
    cand.write_text("\n".join(json.dumps(r) for r in rows))
    refs.write_text("\n".join(json.dumps({"id": r["id"], "captions": [r["caption"]]}) for r in rows))
    assert main(["score", "--cand", str(cand), "--refs", str(refs)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["BLEU4"] == pytest.approx(1.0)
    assert report["ROUGE"] == pytest.approx(1.0)


def test_score_mismatched_ids_exits_2(tmp_path, capsys):
    cand = tmp_path / "cand.jsonl"
    refs = tmp_path / "refs.jsonl"
    cand.write_text(json.dumps({"id": 0, "caption": "a"}))
    refs.write_text(json.dumps({"id": 5, "captions": ["a"]}))
    assert main(["score", "--cand", str(cand), "--refs", str(refs)]) == 2


def test_score_empty_candidate_line_scores_zero_and_succeeds(tmp_path, capsys):
    cand = tmp_path / "cand.jsonl"
    refs = tmp_path / "refs.jsonl"
    cand.write_text(json.dumps({"id": 0, "caption": ""}))
    refs.write_text(json.dumps({"id": 0, "captions": ["some words here"]}))
    assert main(["score", "--cand", str(cand), "--refs", str(refs)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["BLEU4"] == 0.0
    assert report["CIDEr"] == 0.0


def test_score_missing_file_exits_3(tmp_path, capsys):
    assert main(["score", "--cand", str(tmp_path / "no.jsonl"),
                 "--refs", str(tmp_path / "no2.jsonl")]) == 3


def test_train_cli_round_trip(cli_dataset, tmp_path, capsys):
    cfg = tmp_path / "train.json"
    cfg.write_text(json.dumps({
        "caption_kind": "high",
        "batch_size": 3,
        "max_steps": 4,
        "log_every": 2,
        "val_subset": 2,
        "model": dict(
            canvas=[32, 32], conv_channels=[6, 8, 10], relation_dim=8,
            attn_dim=10, hidden_size=14, embed_size=8, max_len=24,
        ),
    }))
    stem = tmp_path / "m"
    code = main(["train", "--data", str(cli_dataset), "--config", str(cfg),
                 "--out", str(stem), "--attn", "f", "--rl", "off", "--seed", "2"])
    assert code == 0
    assert stem.with_suffix(".json").exists()
    assert stem.with_suffix(".bin").exists()
    assert Path(str(stem) + ".train.jsonl").exists()


def test_generate_io_failure_exits_3(tmp_path, capsys):
    blocker = tmp_path / "blocked"
    blocker.write_text("a file where the output directory should go")
    code = main(["generate", "--out", str(blocker / "sub"), "--preset", "desk"])
    assert code == 3


def test_train_attn_off_is_the_contextless_baseline(cli_dataset, tmp_path, capsys):
    stem = tmp_path / "base"
    cfg = tmp_path / "t.json"
    cfg.write_text(json.dumps({
        "caption_kind": "high", "batch_size": 3, "max_steps": 3, "log_every": 3,
        "val_subset": 2,
        "model": dict(canvas=[32, 32], conv_channels=[6, 8, 10], relation_dim=8,
                      attn_dim=10, hidden_size=14, embed_size=8, max_len=20),
    }))
    code = main(["train", "--data", str(cli_dataset), "--config", str(cfg),
                 "--out", str(stem), "--attn", "off", "--seed", "3"])
    assert code == 0
    manifest = json.loads(stem.with_suffix(".json").read_text())
    assert manifest["model_config"]["attentions"] == []
