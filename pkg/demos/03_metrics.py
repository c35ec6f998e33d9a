#!/usr/bin/env python3
"""Walk the captioning metrics through small hand-checkable cases."""

from chartcap.metrics import bleu, cider, meteor_x, rouge_l

print("BLEU-1 clipping: candidate 'the the the' vs reference 'the cat'")
print("  clipped count 1 of 3 ->", bleu("the the the".split(), ["the cat".split()], max_n=1))

print("\nROUGE-L: 'a b c d' vs 'a c b d' share an LCS of 3")
print("  P = R = 0.75 -> F =", rouge_l(list("abcd"), [list("acbd")]))

print("\nMETEOR-x: 'b a' vs 'a b' matches both tokens in two chunks")
print("  F=1, penalty=0.5 ->", meteor_x(["b", "a"], [["a", "b"]]))

print("\nCIDEr over a two-document corpus {'a b', 'c d'}:")
scores, mean = cider([["a", "b"], ["c", "d"]], [[["a", "b"]], [["c", "d"]]])
print("  exact matches score", scores, "(1- and 2-gram cosines are 1; 3- and 4-gram")
print("  vectors are empty at length 2, so each candidate earns 10 * 2/4 = 5.0)")

print("\nIdf can zero out a match: in a one-document corpus every n-gram has")
print("df = N, so idf = 0 and even the shared word carries no weight:")
scores, _ = cider([["a", "b"]], [[["a", "c"]]])
print("  candidate 'a b' vs reference 'a c' ->", scores[0])
