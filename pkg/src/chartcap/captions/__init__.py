"""Caption generation: templates, tokenization, vocabularies, dataset splits."""

from .dataset import (
    CaptionRecord,
    DatasetConfig,
    PRESETS,
    SPLITS,
    build_record,
    generate_dataset,
    read_records,
)
from .templates import (
    DEFAULT_PAIRWISE_CAP,
    HIGH_GRAMMAR,
    HighTemplateFamily,
    RELATION_SURFACES,
    count_high_variants,
    format_label_list,
    render_detailed_caption,
    render_high_caption,
    render_relation_sentence,
)
from .text import (
    BOS,
    EOS,
    PAD,
    SPECIAL_TOKENS,
    UNK,
    Vocabulary,
    build_vocab,
    detokenize,
    normalize,
    tokenize,
)

__all__ = [
    "BOS",
    "CaptionRecord",
    "DEFAULT_PAIRWISE_CAP",
    "DatasetConfig",
    "EOS",
    "HIGH_GRAMMAR",
    "HighTemplateFamily",
    "PAD",
    "PRESETS",
    "RELATION_SURFACES",
    "SPECIAL_TOKENS",
    "SPLITS",
    "UNK",
    "Vocabulary",
    "build_record",
    "build_vocab",
    "count_high_variants",
    "detokenize",
    "format_label_list",
    "generate_dataset",
    "normalize",
    "read_records",
    "render_detailed_caption",
    "render_high_caption",
    "render_relation_sentence",
    "tokenize",
]
