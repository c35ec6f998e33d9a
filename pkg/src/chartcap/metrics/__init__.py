"""Captioning metrics implemented from their definitions: BLEU, ROUGE-L, CIDEr, METEOR-x."""

from .bleu import bleu, ngram_counts
from .cider import IdfTable, cider, cider_single
from .meteor import max_matches, meteor_x, min_chunks
from .report import METRIC_COLUMNS, score_corpus
from .rouge import lcs_length, rouge_l

__all__ = [
    "IdfTable",
    "METRIC_COLUMNS",
    "bleu",
    "cider",
    "cider_single",
    "lcs_length",
    "max_matches",
    "meteor_x",
    "min_chunks",
    "ngram_counts",
    "rouge_l",
    "score_corpus",
]
