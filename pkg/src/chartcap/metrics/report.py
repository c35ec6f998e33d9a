"""Corpus-level metric report: the seven columns used throughout evaluation."""

from __future__ import annotations

from .bleu import bleu
from .cider import IdfTable, cider
from .meteor import meteor_x
from .rouge import rouge_l

Tokens = list[str]

METRIC_COLUMNS = ("CIDEr", "BLEU1", "BLEU2", "BLEU3", "BLEU4", "METEOR", "ROUGE")


def score_corpus(
    candidates: list[Tokens],
    references: list[list[Tokens]],
    idf: IdfTable | None = None,
) -> dict[str, float]:
    """All seven metrics; sentence-level scores averaged over the corpus."""
    _, cider_mean = cider(candidates, references, idf)
    n = len(candidates)
    report = {"CIDEr": cider_mean}
    for max_n in range(1, 5):
        report[f"BLEU{max_n}"] = (
            sum(bleu(c, r, max_n=max_n) for c, r in zip(candidates, references)) / n
        )
    report["METEOR"] = sum(meteor_x(c, r) for c, r in zip(candidates, references)) / n
    report["ROUGE"] = sum(rouge_l(c, r) for c, r in zip(candidates, references)) / n
    return report
