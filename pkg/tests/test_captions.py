import json
import re

import pytest

from chartcap.captions import (
    CaptionRecord,
    DatasetConfig,
    HIGH_GRAMMAR,
    HighTemplateFamily,
    RELATION_SURFACES,
    SPECIAL_TOKENS,
    Vocabulary,
    build_vocab,
    count_high_variants,
    detokenize,
    format_label_list,
    generate_dataset,
    normalize,
    read_records,
    render_detailed_caption,
    render_high_caption,
    tokenize,
)
from chartcap.errors import EmptyCorpus, InconsistentFacts, InvalidConfig
from chartcap.figures import (
    FigureSpec,
    FigureType,
    RelationFact,
    RelationKind,
    Series,
    extract_relations,
    sample_figure_spec,
)

# --- test-only parser over the template grammar -------------------------------

_PATTERNS = []
for kind, surfaces in RELATION_SURFACES.items():
    for surface in surfaces:
        regex = re.escape(surface).replace(r"\{a\}", "(?P<a>.+?)").replace(
            r"\{b\}", "(?P<b>.+?)"
        )
        _PATTERNS.append((kind, re.compile("^" + regex + "$")))


def parse_relation_sentence(sentence: str) -> RelationFact:
    hits = []
    for kind, pattern in _PATTERNS:
        m = pattern.match(sentence)
        if m:
            hits.append(RelationFact(kind, m.group("a"), m.groupdict().get("b")))
    assert len(hits) == 1, f"ambiguous or unparseable sentence: {sentence!r} -> {hits}"
    return hits[0]


def split_sentences(text: str) -> list[str]:
    return [s.strip() + "." for s in text.split(".") if s.strip()]


def line_spec():
    return FigureSpec(
        figure_type=FigureType.LINE,
        series=tuple(
            Series(name, (10.0 * i + 5.0, 20.0 * i + 1.0, 5.0 * i + 2.0))
            for i, name in enumerate(
                ["Yellow", "Magenta", "Sky Blue", "Violet", "Lawn Green", "Dark Magenta"]
            )
        ),
        x_points=(0.0, 1.0, 2.0),
        seed=0,
    )


# --- grammar size --------------------------------------------------------------


def test_shipped_grammar_realizes_228_variants():
    assert count_high_variants() == 228


def test_single_variant_grammar_counts_one():
    grammar = {FigureType.VBAR: HighTemplateFamily(["a"], ["b"], ["c"])}
    assert count_high_variants(grammar) == 1


def test_doubling_a_slot_doubles_the_count():
    base = {
        t: HighTemplateFamily(list(f.opening), list(f.count), list(f.naming))
        for t, f in HIGH_GRAMMAR.items()
    }
    base[FigureType.LINE].naming = base[FigureType.LINE].naming * 2
    expected = 228 + HIGH_GRAMMAR[FigureType.LINE].variant_count()
    assert count_high_variants(base) == expected


# --- high captions --------------------------------------------------------------


def test_high_caption_shape_matches_example():
    spec = line_spec()
    text = render_high_caption(spec, 4)
    assert "line plot" in text
    assert "6" in text
    for label in spec.labels:
        assert label in text


def test_high_caption_deterministic():
    spec = sample_figure_spec(5)
    assert render_high_caption(spec, 9) == render_high_caption(spec, 9)


def test_high_caption_slots_stable_across_seeds():
    spec = sample_figure_spec(6)
    n = len(spec.series)
    for seed in range(12):
        text = render_high_caption(spec, seed)
        assert str(n) in text
        for label in spec.labels:
            assert label in text


def test_format_label_list():
    assert format_label_list(["A"]) == "A"
    assert format_label_list(["A", "B"]) == "A and B"
    assert format_label_list(["A", "B", "C"]) == "A, B and C"


# --- detailed captions ----------------------------------------------------------


def test_empty_facts_yield_high_caption_only():
    spec = sample_figure_spec(3)
    assert render_detailed_caption(spec, [], 7) == render_high_caption(spec, 7)


def test_detailed_caption_extends_high_prefix():
    for seed in range(10):
        spec = sample_figure_spec(seed)
        facts = extract_relations(spec)
        high = render_high_caption(spec, seed)
        detailed = render_detailed_caption(spec, facts, seed)
        assert detailed.startswith(high)
        if facts:
            assert len(tokenize(detailed)) > len(tokenize(high))


def test_single_pairwise_fact_renders_one_sentence():
    spec = FigureSpec(
        figure_type=FigureType.VBAR,
        series=(Series("Red", (9.0,)), Series("Blue", (1.0,))),
        x_points=(),
        seed=0,
    )
    fact = RelationFact(RelationKind.GREATER_THAN, "Red", "Blue")
    detailed = render_detailed_caption(spec, [fact], 3)
    high = render_high_caption(spec, 3)
    extra = split_sentences(detailed[len(high):])
    assert len(extra) == 1
    parsed = parse_relation_sentence(extra[0])
    assert parsed == fact
    assert extra[0].index("Red") < extra[0].index("Blue")


def test_smoothest_fact_renders_named_sentence():
    spec = line_spec()
    facts = [f for f in extract_relations(spec) if f.kind == RelationKind.SMOOTHEST]
    assert facts
    detailed = render_detailed_caption(spec, facts, 0)
    assert facts[0].subject in detailed
    assert "smoothest" in detailed


def test_inconsistent_facts_rejected():
    spec = sample_figure_spec(4, FigureType.VBAR)
    lie = RelationFact(RelationKind.MAXIMUM, spec.labels[0])
    truth = extract_relations(spec)
    if lie in truth:
        lie = RelationFact(RelationKind.MINIMUM, spec.labels[0])
        assert lie not in truth
    with pytest.raises(InconsistentFacts):
        render_detailed_caption(spec, [lie], 0)


def test_relation_sentences_round_trip():
    for seed in range(20):
        spec = sample_figure_spec(seed)
        facts = extract_relations(spec)
        detailed = render_detailed_caption(spec, facts, seed)
        high = render_high_caption(spec, seed)
        sentences = split_sentences(detailed[len(high):])
        parsed = [parse_relation_sentence(s) for s in sentences]
        assert set(parsed) <= set(facts)
        superlatives = {f for f in facts if f.object is None}
        assert superlatives <= set(parsed)


def test_pairwise_cap_limits_relation_sentences():
    spec = sample_figure_spec(8, FigureType.VBAR, max_series=7)
    facts = extract_relations(spec)
    pairwise = [f for f in facts if f.object is not None]
    assert len(pairwise) > 2
    detailed = render_detailed_caption(spec, facts, 1, pairwise_cap=2)
    high = render_high_caption(spec, 1)
    sentences = split_sentences(detailed[len(high):])
    n_superlative = len(facts) - len(pairwise)
    assert len(sentences) == n_superlative + 2


# --- tokenization ----------------------------------------------------------------


def test_tokenize_examples():
    assert tokenize("This is a line plot.") == ["this", "is", "a", "line", "plot", "."]
    assert tokenize("") == []
    assert tokenize("Sky Blue is less than Lawn Green.") == [
        "sky", "blue", "is", "less", "than", "lawn", "green", ".",
    ]


def test_tokenize_handles_all_detached_punctuation():
    assert tokenize("a,b;c: d.") == ["a", ",", "b", ";", "c", ":", "d", "."]


def test_detokenize_round_trip_equals_normalize():
    for seed in range(10):
        spec = sample_figure_spec(seed)
        caption = render_detailed_caption(spec, extract_relations(spec), seed)
        assert detokenize(tokenize(caption)) == normalize(caption)
        assert normalize(normalize(caption)) == normalize(caption)


# --- vocabulary -------------------------------------------------------------------


def test_vocab_id_assignment():
    vocab = build_vocab(["a b", "a"])
    assert vocab.encode_token("a") == 4
    assert vocab.encode_token("b") == 5


def test_vocab_specials_reserved():
    vocab = build_vocab(["x y z"])
    assert vocab.decode([0, 1, 2, 3]) == SPECIAL_TOKENS
    assert vocab.encode_token("<pad>") == 0


def test_vocab_unknown_maps_to_unk():
    vocab = build_vocab(["a b"])
    assert vocab.encode_token("zzz") == 3


def test_vocab_frequency_then_lexicographic():
    vocab = build_vocab(["b b c a a a", "c"])
    # a:3, b:2, c:2 -> a, then b before c
    assert vocab.encode(["a", "b", "c"]) == [4, 5, 6]


def test_empty_corpus_rejected():
    with pytest.raises(EmptyCorpus):
        build_vocab([])


# --- dataset ----------------------------------------------------------------------


def test_dataset_layout_and_balance(tiny_dataset):
    records = read_records(tiny_dataset, "train")
    assert len(records) == 30
    per_type = {}
    for rec in records:
        per_type[rec.figure_type] = per_type.get(rec.figure_type, 0) + 1
    assert all(abs(count - 30 / 5) <= 1 for count in per_type.values())
    for rec in records[:5]:
        assert (tiny_dataset / "train" / rec.image_path).exists()
        assert rec.detailed_caption.startswith(rec.high_caption)
        caption_words = set(tokenize(rec.detailed_caption))
        for label in rec.labels:
            for word in tokenize(label):
                assert word in caption_words


def test_dataset_regeneration_is_byte_identical(tiny_dataset, tmp_path):
    config = DatasetConfig(counts={"train": 30, "val": 6, "test": 6}, canvas=(32, 32), seed=11)
    generate_dataset(config, tmp_path)
    for split in ("train", "val", "test"):
        a = (tiny_dataset / split / "captions.jsonl").read_bytes()
        b = (tmp_path / split / "captions.jsonl").read_bytes()
        assert a == b
        img = f"images/{0:06d}.png"
        assert (tiny_dataset / split / img).read_bytes() == (tmp_path / split / img).read_bytes()


def test_dataset_dry_run_returns_counts_without_writing(tmp_path):
    config = DatasetConfig(counts={"train": 99_360, "val": 5_000, "test": 5_152}, seed=1)
    counts = generate_dataset(config, tmp_path / "nope", dry_run=True)
    assert counts == {"train": 99_360, "val": 5_000, "test": 5_152}
    assert not (tmp_path / "nope").exists()


def test_record_json_round_trip(tiny_dataset):
    line = (tiny_dataset / "val" / "captions.jsonl").read_text().splitlines()[0]
    rec = CaptionRecord.from_json(line)
    assert json.loads(rec.to_json()) == json.loads(line)


def test_invalid_configs_rejected():
    with pytest.raises(InvalidConfig):
        DatasetConfig(counts={"train": 1}).validate()
    with pytest.raises(InvalidConfig):
        DatasetConfig(canvas=(8, 8)).validate()
    with pytest.raises(InvalidConfig):
        DatasetConfig(pairwise_cap=0).validate()


def test_relations_in_records_reverify(tiny_dataset):
    from chartcap.figures import fact_holds, sample_figure_spec as sample

    for split in ("val", "test"):
        for rec in read_records(tiny_dataset, split):
            spec = sample(rec.seed, FigureType(rec.figure_type), canvas=(32, 32))
            assert spec.labels == rec.labels
            for fact in rec.relations:
                assert fact_holds(spec, fact)
