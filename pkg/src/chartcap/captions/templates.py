"""Paraphrase-template engine for high-level and detailed captions.

The high-level grammar is a per-figure-type product of three sentence slots
(opening, count, naming); the shipped variant lists realize 228 distinct
high-level captions in total. Detailed captions append one sentence per
selected relation fact, each kind having at least two surface forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InconsistentFacts
from ..figures import (
    FigureSpec,
    FigureType,
    PAIRWISE_KINDS,
    RelationFact,
    RelationKind,
    fact_holds,
)
from ..figures.spec import mix_seed


@dataclass
class HighTemplateFamily:
    """Variant lists for the three high-level sentence slots of one figure type."""

    opening: list[str]  # type name already inlined
    count: list[str]  # slot {n}
    naming: list[str]  # slot {labels}

    def variant_count(self) -> int:
        return len(self.opening) * len(self.count) * len(self.naming)


_OPENINGS = [
    "This is a {t}.",
    "This figure is a {t}.",
    "It is a {t}.",
    "The figure shows a {t}.",
]

_NAMINGS = [
    "Their names are {labels}.",
    "The labels are {labels}.",
    "They are {labels}.",
]


def _counts(noun: str) -> list[str]:
    return [
        "It contains {n} categories.",
        "It has {n} labels.",
        "There are {n} " + noun + " in it.",
        "{n} " + noun + " are shown.",
    ]


def _family(figure_type: FigureType, noun: str, openings: list[str]) -> HighTemplateFamily:
    return HighTemplateFamily(
        opening=[o.format(t=figure_type.display_name) for o in openings],
        count=_counts(noun),
        naming=list(_NAMINGS),
    )


HIGH_GRAMMAR: dict[FigureType, HighTemplateFamily] = {
    FigureType.VBAR: _family(FigureType.VBAR, "bars", _OPENINGS),
    FigureType.HBAR: _family(FigureType.HBAR, "bars", _OPENINGS),
    # the pie family drops the "It is a ..." opening
    FigureType.PIE: _family(FigureType.PIE, "slices", [_OPENINGS[0], _OPENINGS[1], _OPENINGS[3]]),
    FigureType.LINE: _family(FigureType.LINE, "lines", _OPENINGS),
    FigureType.DOTLINE: _family(FigureType.DOTLINE, "lines", _OPENINGS),
}

RELATION_SURFACES: dict[RelationKind, list[str]] = {
    RelationKind.MAXIMUM: ["{a} is the maximum.", "{a} has the maximum value."],
    RelationKind.MINIMUM: ["{a} is the minimum.", "{a} has the minimum value."],
    RelationKind.MEDIAN: ["{a} is the median.", "{a} represents the median."],
    RelationKind.GREATER_THAN: ["{a} is greater than {b}.", "{a} is larger than {b}."],
    RelationKind.LESS_THAN: ["{a} is less than {b}.", "{a} is smaller than {b}."],
    RelationKind.HIGHEST_VALUE: ["{a} has the highest value.", "{a} reaches the highest value."],
    RelationKind.LOWEST_VALUE: ["{a} has the lowest value.", "{a} reaches the lowest value."],
    RelationKind.MAX_AUC: [
        "{a} has the maximum area under the curve.",
        "{a} has the largest area under the curve.",
    ],
    RelationKind.MIN_AUC: [
        "{a} has the minimum area under the curve.",
        "{a} has the smallest area under the curve.",
    ],
    RelationKind.SMOOTHEST: ["{a} is the smoothest.", "{a} has the smoothest curve."],
    RelationKind.ROUGHEST: ["{a} is the roughest.", "{a} has the roughest curve."],
    RelationKind.INTERSECTS: ["{a} intersects {b}.", "{a} crosses {b}."],
}

_KIND_ORDER = {kind: i for i, kind in enumerate(RelationKind)}

DEFAULT_PAIRWISE_CAP = 4


def count_high_variants(grammar: dict[FigureType, HighTemplateFamily] | None = None) -> int:
    """Number of distinct high-level realizations the grammar can produce."""
    grammar = HIGH_GRAMMAR if grammar is None else grammar
    return sum(family.variant_count() for family in grammar.values())


def format_label_list(labels: list[str]) -> str:
    if len(labels) == 1:
        return labels[0]
    return ", ".join(labels[:-1]) + " and " + labels[-1]


def render_high_caption(spec: FigureSpec, seed: int) -> str:
    """One realization of the high-level grammar; deterministic in (spec, seed)."""
    rng = np.random.default_rng(seed)
    family = HIGH_GRAMMAR[spec.figure_type]
    opening = family.opening[int(rng.integers(len(family.opening)))]
    count = family.count[int(rng.integers(len(family.count)))]
    naming = family.naming[int(rng.integers(len(family.naming)))]
    labels = spec.labels
    return " ".join(
        [opening, count.format(n=len(labels)), naming.format(labels=format_label_list(labels))]
    )


def render_relation_sentence(fact: RelationFact, rng: np.random.Generator) -> str:
    surfaces = RELATION_SURFACES[fact.kind]
    surface = surfaces[int(rng.integers(len(surfaces)))]
    return surface.format(a=fact.subject, b=fact.object)


def render_detailed_caption(
    spec: FigureSpec,
    facts: list[RelationFact],
    seed: int,
    pairwise_cap: int = DEFAULT_PAIRWISE_CAP,
) -> str:
    """High-level caption followed by relation sentences.

    Keeps every superlative fact (canonical order) and a seeded sample of up
    to `pairwise_cap` pairwise facts. Raises InconsistentFacts if any fact
    does not hold against the figure data.
    """
    for fact in facts:
        if not fact_holds(spec, fact):
            raise InconsistentFacts(f"{fact.kind.value}({fact.subject}, {fact.object}) is false")

    high = render_high_caption(spec, seed)
    rng = np.random.default_rng(mix_seed(seed, 1))

    superlatives = sorted(
        (f for f in facts if f.kind not in PAIRWISE_KINDS),
        key=lambda f: (_KIND_ORDER[f.kind], f.subject),
    )
    pairwise = [f for f in facts if f.kind in PAIRWISE_KINDS]
    if len(pairwise) > pairwise_cap:
        picks = rng.choice(len(pairwise), size=pairwise_cap, replace=False)
        pairwise = [pairwise[int(i)] for i in picks]

    sentences = [render_relation_sentence(f, rng) for f in superlatives + pairwise]
    return high if not sentences else high + " " + " ".join(sentences)
