"""CIDEr: consensus scoring via tf-idf n-gram cosine similarity, n = 1..4.

Plain CIDEr (no length-gaussian damping). Each reference caption counts as
one document for idf; n-grams absent from the reference corpus are weighted
as if their document frequency were 1.
"""

from __future__ import annotations

import math
from collections import Counter

from ..errors import NoReferences
from .bleu import ngram_counts

Tokens = list[str]

MAX_N = 4
SCALE = 10.0


class IdfTable:
    """Per-n-gram idf = ln(#documents / document frequency), immutable."""

    def __init__(self, reference_docs: list[Tokens]):
        if not reference_docs:
            raise NoReferences("idf table needs at least one reference document")
        self.n_docs = len(reference_docs)
        self.df: Counter = Counter()
        for doc in reference_docs:
            seen = set()
            for n in range(1, MAX_N + 1):
                seen.update(ngram_counts(doc, n))
            self.df.update(seen)
        self._log_n = math.log(self.n_docs)

    def idf(self, gram: tuple) -> float:
        return self._log_n - math.log(max(1.0, self.df.get(gram, 0)))


def _tfidf_vector(tokens: Tokens, n: int, idf: IdfTable) -> dict:
    return {gram: count * idf.idf(gram) for gram, count in ngram_counts(tokens, n).items()}


def _cosine(u: dict, v: dict) -> float:
    nu = math.sqrt(sum(x * x for x in u.values()))
    nv = math.sqrt(sum(x * x for x in v.values()))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    dot = sum(x * v[g] for g, x in u.items() if g in v)
    return dot / (nu * nv)


def cider_single(candidate: Tokens, references: list[Tokens], idf: IdfTable) -> float:
    """Score one candidate against its references under a fixed idf table."""
    if not references:
        raise NoReferences("cider needs at least one reference")
    total = 0.0
    for n in range(1, MAX_N + 1):
        cand_vec = _tfidf_vector(candidate, n, idf)
        total += sum(_cosine(cand_vec, _tfidf_vector(ref, n, idf)) for ref in references) / len(
            references
        )
    return SCALE * total / MAX_N


def cider(
    candidates: list[Tokens],
    references: list[list[Tokens]],
    idf: IdfTable | None = None,
) -> tuple[list[float], float]:
    """Per-candidate CIDEr scores and their corpus mean.

    The idf table defaults to one built from all reference documents of the
    evaluation set; pass a prebuilt table to freeze it (e.g. for RL rewards).
    """
    if len(candidates) != len(references) or any(not refs for refs in references):
        raise NoReferences("every candidate needs a nonempty reference list")
    if idf is None:
        idf = IdfTable([ref for refs in references for ref in refs])
    scores = [cider_single(cand, refs, idf) for cand, refs in zip(candidates, references)]
    mean = sum(scores) / len(scores) if scores else 0.0
    return scores, mean
