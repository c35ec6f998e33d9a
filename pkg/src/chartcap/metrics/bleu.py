"""BLEU with clipped modified n-gram precision and brevity penalty."""

from __future__ import annotations

import math
from collections import Counter

from ..errors import NoReferences

Tokens = list[str]


def ngram_counts(tokens: Tokens, n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(candidate: Tokens, references: list[Tokens], max_n: int = 4, smooth: bool = False) -> float:
    """Geometric mean of clipped n-gram precisions for n=1..max_n times brevity penalty.

    Unsmoothed by default: any zero precision (or an empty candidate) gives 0.
    With smooth=True, orders with candidate n-grams get add-one smoothing.
    """
    if not references:
        raise NoReferences("bleu needs at least one reference")
    if not candidate:
        return 0.0

    log_sum = 0.0
    for n in range(1, max_n + 1):
        cand = ngram_counts(candidate, n)
        total = sum(cand.values())
        if total == 0:
            return 0.0
        clip: Counter = Counter()
        for ref in references:
            ref_counts = ngram_counts(ref, n)
            for gram in cand:
                clip[gram] = max(clip[gram], min(cand[gram], ref_counts.get(gram, 0)))
        matched = sum(clip.values())
        if smooth:
            precision = (matched + 1) / (total + 1)
        else:
            if matched == 0:
                return 0.0
            precision = matched / total
        log_sum += math.log(precision)

    c = len(candidate)
    # closest reference length; ties broken toward the shorter reference
    r = min((len(ref) for ref in references), key=lambda length: (abs(length - c), length))
    bp = min(1.0, math.exp(1.0 - r / c))
    return bp * math.exp(log_sum / max_n)
