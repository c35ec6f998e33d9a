"""ROUGE-L: longest-common-subsequence F-measure."""

from __future__ import annotations

from ..errors import NoReferences

Tokens = list[str]


def lcs_length(a: Tokens, b: Tokens) -> int:
    """Length of the longest common subsequence, standard O(len(a)*len(b)) table."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0] * (len(b) + 1)
        for j, y in enumerate(b, start=1):
            cur[j] = prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1])
        prev = cur
    return prev[-1]


def rouge_l(candidate: Tokens, references: list[Tokens], beta: float = 1.2) -> float:
    """Max over references of the LCS F-score with recall weight beta."""
    if not references:
        raise NoReferences("rouge_l needs at least one reference")
    if not candidate:
        return 0.0
    best = 0.0
    b2 = beta * beta
    for ref in references:
        if not ref:
            continue
        lcs = lcs_length(candidate, ref)
        if lcs == 0:
            continue
        p = lcs / len(candidate)
        r = lcs / len(ref)
        best = max(best, (1 + b2) * p * r / (r + b2 * p))
    return best
