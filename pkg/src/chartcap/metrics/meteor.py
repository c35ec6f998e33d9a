"""Exact-match METEOR variant: unigram alignment with a fragmentation penalty.

Alignments use exact token matches only (no stemming or synonymy), first
maximizing the number of matched tokens and then minimizing the number of
chunks (maximal runs contiguous in both sequences). Parameters are fixed at
alpha=0.9, beta=3, gamma=0.5.
"""

from __future__ import annotations

from collections import Counter

from ..errors import NoReferences

Tokens = list[str]

ALPHA, BETA, GAMMA = 0.9, 3.0, 0.5

# Chunk minimization is branch-and-bound over common-substring blocks; the
# node cap bounds pathological inputs, falling back to the greedy solution.
_NODE_CAP = 100_000


def max_matches(candidate: Tokens, reference: Tokens) -> int:
    cand, ref = Counter(candidate), Counter(reference)
    return sum(min(c, ref[w]) for w, c in cand.items())


def _blocks_at(candidate, reference, i, ref_free):
    """All (j, L) blocks starting at candidate position i, longest first."""
    out = []
    for j in range(len(reference)):
        if ref_free[j] and reference[j] == candidate[i]:
            length = 1
            while (
                i + length < len(candidate)
                and j + length < len(reference)
                and ref_free[j + length]
                and candidate[i + length] == reference[j + length]
            ):
                length += 1
            out.append((j, length))
    out.sort(key=lambda jl: (-jl[1], jl[0]))
    return out


def _greedy_chunks(candidate: Tokens, reference: Tokens, total: int) -> int:
    """Chunk count of the greedy longest-block-first alignment (upper bound)."""
    cand_free = [True] * len(candidate)
    ref_free = [True] * len(reference)
    matched, chunks = 0, 0
    while matched < total:
        best = None  # (length, i, j)
        for i in range(len(candidate)):
            if not cand_free[i]:
                continue
            for j in range(len(reference)):
                if not ref_free[j] or reference[j] != candidate[i]:
                    continue
                length = 0
                while (
                    i + length < len(candidate)
                    and j + length < len(reference)
                    and cand_free[i + length]
                    and ref_free[j + length]
                    and candidate[i + length] == reference[j + length]
                ):
                    length += 1
                if best is None or length > best[0]:
                    best = (length, i, j)
        length, i, j = best
        for k in range(length):
            cand_free[i + k] = ref_free[j + k] = False
        matched += length
        chunks += 1
    return chunks


def min_chunks(candidate: Tokens, reference: Tokens) -> tuple[int, int]:
    """(matches, chunks) of a maximal alignment with the fewest chunks.

    Exact search over block decompositions ordered by candidate start, with a
    feasibility prune (remaining multiset overlap must cover the remaining
    matches) and a chunk lower bound; capped for adversarial inputs.
    """
    total = max_matches(candidate, reference)
    if total == 0:
        return 0, 0

    best = _greedy_chunks(candidate, reference, total)
    ref_free = [True] * len(reference)
    avail_cand = Counter(candidate)
    avail_ref = Counter(reference)
    overlap = total  # sum over words of min(avail_cand, avail_ref)
    nodes = 0

    def search(i: int, matched: int, chunks: int) -> None:
        nonlocal best, overlap, nodes
        if matched == total:
            best = min(best, chunks)
            return
        nodes += 1
        if nodes > _NODE_CAP or i >= len(candidate):
            return
        if chunks + 1 >= best:
            return

        word = candidate[i]

        # branch: match a block starting at candidate position i
        for j, max_len in _blocks_at(candidate, reference, i, ref_free):
            for length in range(max_len, 0, -1):
                for k in range(length):
                    w = candidate[i + k]
                    ref_free[j + k] = False
                    avail_cand[w] -= 1
                    avail_ref[w] -= 1
                    overlap -= 1
                search(i + length, matched + length, chunks + 1)
                for k in range(length):
                    w = candidate[i + k]
                    ref_free[j + k] = True
                    avail_cand[w] += 1
                    avail_ref[w] += 1
                    overlap += 1

        # branch: leave candidate position i unmatched, if feasible
        avail_cand[word] -= 1
        lost = 1 if avail_cand[word] < avail_ref[word] else 0
        overlap -= lost
        if overlap >= total - matched:
            search(i + 1, matched, chunks)
        avail_cand[word] += 1
        overlap += lost

    search(0, 0, 0)
    return total, best


def meteor_x(candidate: Tokens, references: list[Tokens]) -> float:
    """Max over references of F_mean * (1 - fragmentation penalty)."""
    if not references:
        raise NoReferences("meteor_x needs at least one reference")
    if not candidate:
        return 0.0
    best = 0.0
    for ref in references:
        if not ref:
            continue
        matches, chunks = min_chunks(candidate, ref)
        if matches == 0:
            continue
        p = matches / len(candidate)
        r = matches / len(ref)
        f_mean = p * r / (ALPHA * p + (1 - ALPHA) * r)
        penalty = GAMMA * (chunks / matches) ** BETA
        best = max(best, f_mean * (1 - penalty))
    return best
