#!/usr/bin/env python3
"""Template captions: variant counting, high vs detailed text, tokenization."""

from chartcap.captions import (
    build_vocab,
    count_high_variants,
    detokenize,
    render_detailed_caption,
    render_high_caption,
    tokenize,
)
from chartcap.figures import FigureType, extract_relations, sample_figure_spec

print(f"The shipped high-level grammar realizes {count_high_variants()} distinct captions.\n")

spec = sample_figure_spec(seed=7, figure_type=FigureType.LINE)
facts = extract_relations(spec)

print("Three paraphrases of the same figure (different caption seeds):")
for seed in (0, 1, 2):
    print(f"  [{seed}] {render_high_caption(spec, seed)}")

detailed = render_detailed_caption(spec, facts, seed=0)
print("\nDetailed caption = high-level prefix + relation sentences:")
print(f"  {detailed}")

tokens = tokenize(detailed)
print(f"\nTokenized ({len(tokens)} tokens): {tokens[:14]} ...")
print(f"Detokenized: {detokenize(tokens)[:80]} ...")

vocab = build_vocab([detailed])
print(f"\nVocabulary of this one caption: {len(vocab)} entries "
      f"(ids 0-3 reserved for PAD/BOS/EOS/UNK)")
print("id('the') =", vocab.encode_token("the"), " id('<never seen>') ->",
      vocab.encode_token("zzz"), "(UNK)")
