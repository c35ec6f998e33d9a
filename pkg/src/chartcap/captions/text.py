"""Tokenization and vocabulary handling for caption text."""

from __future__ import annotations

import re
from collections import Counter
from typing import Iterable

from ..errors import EmptyCorpus

PAD, BOS, EOS, UNK = 0, 1, 2, 3
SPECIAL_TOKENS = ["<pad>", "<bos>", "<eos>", "<unk>"]

_PUNCT = ".,;:"
_TOKEN_RE = re.compile(r"[.,;:]|[^\s.,;:]+")


def tokenize(text: str) -> list[str]:
    """Lowercase, split on whitespace, detach . , ; : as separate tokens."""
    return _TOKEN_RE.findall(text.lower())


def detokenize(tokens: list[str]) -> str:
    """Join tokens with spaces, attaching punctuation to the preceding token."""
    out: list[str] = []
    for tok in tokens:
        if tok in _PUNCT and out:
            out[-1] += tok
        else:
            out.append(tok)
    return " ".join(out)


def normalize(text: str) -> str:
    """Lowercase and standardize punctuation spacing; fixed point of detokenize∘tokenize."""
    return detokenize(tokenize(text))


class Vocabulary:
    """Bijection between tokens and ids with reserved specials."""

    def __init__(self, tokens: list[str]):
        self.id_to_token = SPECIAL_TOKENS + list(tokens)
        self.token_to_id = {t: i for i, t in enumerate(self.id_to_token)}
        if len(self.token_to_id) != len(self.id_to_token):
            raise ValueError("duplicate tokens in vocabulary")

    def __len__(self) -> int:
        return len(self.id_to_token)

    def encode_token(self, token: str) -> int:
        return self.token_to_id.get(token, UNK)

    def encode(self, tokens: Iterable[str]) -> list[int]:
        return [self.encode_token(t) for t in tokens]

    def decode(self, ids: Iterable[int]) -> list[str]:
        return [self.id_to_token[i] for i in ids]

    def tokens(self) -> list[str]:
        """Non-special tokens in id order, for checkpoint round trips."""
        return self.id_to_token[len(SPECIAL_TOKENS):]


def build_vocab(captions: Iterable[str]) -> Vocabulary:
    """Vocabulary over all tokens of the corpus, ids by descending frequency then lexicographic."""
    counts: Counter[str] = Counter()
    empty = True
    for caption in captions:
        empty = False
        counts.update(tokenize(caption))
    if empty:
        raise EmptyCorpus("no captions to build a vocabulary from")
    ordered = sorted(counts, key=lambda t: (-counts[t], t))
    return Vocabulary(ordered)
