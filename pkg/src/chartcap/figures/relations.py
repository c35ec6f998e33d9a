"""Ground-truth relation facts between the labeled series of a figure."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .spec import FigureSpec, FigureType


class RelationKind(str, Enum):
    MAXIMUM = "maximum"
    MINIMUM = "minimum"
    GREATER_THAN = "greater_than"
    LESS_THAN = "less_than"
    MEDIAN = "median"
    HIGHEST_VALUE = "highest_value"
    LOWEST_VALUE = "lowest_value"
    MAX_AUC = "max_auc"
    MIN_AUC = "min_auc"
    SMOOTHEST = "smoothest"
    ROUGHEST = "roughest"
    INTERSECTS = "intersects"


BINARY_KINDS = {RelationKind.GREATER_THAN, RelationKind.LESS_THAN, RelationKind.INTERSECTS}

# Pairwise kinds are the ones caption generation samples rather than always keeps.
PAIRWISE_KINDS = BINARY_KINDS

BAR_PIE_KINDS = {
    RelationKind.MAXIMUM,
    RelationKind.MINIMUM,
    RelationKind.GREATER_THAN,
    RelationKind.LESS_THAN,
    RelationKind.MEDIAN,
}

LINE_KINDS = {
    RelationKind.HIGHEST_VALUE,
    RelationKind.LOWEST_VALUE,
    RelationKind.GREATER_THAN,
    RelationKind.LESS_THAN,
    RelationKind.MAX_AUC,
    RelationKind.MIN_AUC,
    RelationKind.SMOOTHEST,
    RelationKind.ROUGHEST,
    RelationKind.INTERSECTS,
}


@dataclass(frozen=True)
class RelationFact:
    kind: RelationKind
    subject: str
    object: str | None = None

    def __post_init__(self):
        if (self.object is not None) != (self.kind in BINARY_KINDS):
            raise ValueError(f"{self.kind.value}: object must be present iff the kind is binary")


def trapezoid_area(x: tuple[float, ...], y: tuple[float, ...]) -> float:
    """Area under the polyline by the trapezoid rule."""
    total = 0.0
    for j in range(len(y) - 1):
        total += 0.5 * (y[j] + y[j + 1]) * (x[j + 1] - x[j])
    return total


def roughness(y: tuple[float, ...]) -> float:
    """Mean absolute second difference; lower means smoother."""
    diffs = [abs(y[j + 2] - 2.0 * y[j + 1] + y[j]) for j in range(len(y) - 2)]
    return sum(diffs) / len(diffs)


def polylines_intersect(y_a: tuple[float, ...], y_b: tuple[float, ...]) -> bool:
    """True iff the two polylines over a shared x grid cross or touch.

    Both series are linear within each strip between consecutive grid points,
    so their difference is linear there and a meeting inside the strip is
    equivalent to a sign change (or zero) of the difference at the endpoints.
    """
    d = [a - b for a, b in zip(y_a, y_b)]
    return any(d[j] * d[j + 1] <= 0.0 for j in range(len(d) - 1))


def _unique_extremum(scored: list[tuple[str, float]], pick_max: bool) -> str | None:
    """Label holding the strict extremum, or None on a tie."""
    best = max(v for _, v in scored) if pick_max else min(v for _, v in scored)
    holders = [label for label, v in scored if v == best]
    return holders[0] if len(holders) == 1 else None


def extract_relations(spec: FigureSpec) -> list[RelationFact]:
    """Enumerate every true relation fact of the kinds allowed for this figure type.

    Tied superlatives produce no fact; the median exists only for an odd
    series count with a unique middle value. Intersection facts are emitted
    once per unordered pair, subject being the earlier series.
    """
    facts: list[RelationFact] = []
    labels = spec.labels

    if spec.figure_type.is_line:
        ys = [s.values for s in spec.series]
        peaks = [max(y) for y in ys]
        troughs = [min(y) for y in ys]
        areas = [trapezoid_area(spec.x_points, y) for y in ys]
        roughs = [roughness(y) for y in ys]

        for kind, scores, pick_max in (
            (RelationKind.HIGHEST_VALUE, peaks, True),
            (RelationKind.LOWEST_VALUE, troughs, False),
            (RelationKind.MAX_AUC, areas, True),
            (RelationKind.MIN_AUC, areas, False),
            (RelationKind.SMOOTHEST, roughs, False),
            (RelationKind.ROUGHEST, roughs, True),
        ):
            holder = _unique_extremum(list(zip(labels, scores)), pick_max)
            if holder is not None:
                facts.append(RelationFact(kind, holder))

        # Pairwise comparisons of line series rank their peak values.
        for i, a in enumerate(labels):
            for j, b in enumerate(labels):
                if i != j and peaks[i] > peaks[j]:
                    facts.append(RelationFact(RelationKind.GREATER_THAN, a, b))
                    facts.append(RelationFact(RelationKind.LESS_THAN, b, a))

        for i in range(len(labels)):
            for j in range(i + 1, len(labels)):
                if polylines_intersect(ys[i], ys[j]):
                    facts.append(RelationFact(RelationKind.INTERSECTS, labels[i], labels[j]))
    else:
        values = [s.values[0] for s in spec.series]
        scored = list(zip(labels, values))

        holder = _unique_extremum(scored, True)
        if holder is not None:
            facts.append(RelationFact(RelationKind.MAXIMUM, holder))
        holder = _unique_extremum(scored, False)
        if holder is not None:
            facts.append(RelationFact(RelationKind.MINIMUM, holder))

        if len(values) % 2 == 1:
            mid = sorted(values)[len(values) // 2]
            holders = [label for label, v in scored if v == mid]
            if len(holders) == 1:
                facts.append(RelationFact(RelationKind.MEDIAN, holders[0]))

        for i, (a, va) in enumerate(scored):
            for j, (b, vb) in enumerate(scored):
                if i != j and va > vb:
                    facts.append(RelationFact(RelationKind.GREATER_THAN, a, b))
                    facts.append(RelationFact(RelationKind.LESS_THAN, b, a))

    return facts


def fact_holds(spec: FigureSpec, fact: RelationFact) -> bool:
    """Check one fact directly against the raw figure data."""
    labels = spec.labels
    if fact.subject not in labels or (fact.object is not None and fact.object not in labels):
        return False
    allowed = LINE_KINDS if spec.figure_type.is_line else BAR_PIE_KINDS
    if fact.kind not in allowed:
        return False

    by_label = {s.label: s.values for s in spec.series}

    if spec.figure_type.is_line:
        metric = {
            RelationKind.HIGHEST_VALUE: (lambda y: max(y), True),
            RelationKind.LOWEST_VALUE: (lambda y: min(y), False),
            RelationKind.MAX_AUC: (lambda y: trapezoid_area(spec.x_points, y), True),
            RelationKind.MIN_AUC: (lambda y: trapezoid_area(spec.x_points, y), False),
            RelationKind.SMOOTHEST: (roughness, False),
            RelationKind.ROUGHEST: (roughness, True),
        }
        if fact.kind in metric:
            fn, pick_max = metric[fact.kind]
            scored = [(label, fn(by_label[label])) for label in labels]
            return _unique_extremum(scored, pick_max) == fact.subject
        if fact.kind == RelationKind.INTERSECTS:
            return polylines_intersect(by_label[fact.subject], by_label[fact.object])
        a, b = max(by_label[fact.subject]), max(by_label[fact.object])
    else:
        if fact.kind == RelationKind.MAXIMUM:
            scored = [(label, by_label[label][0]) for label in labels]
            return _unique_extremum(scored, True) == fact.subject
        if fact.kind == RelationKind.MINIMUM:
            scored = [(label, by_label[label][0]) for label in labels]
            return _unique_extremum(scored, False) == fact.subject
        if fact.kind == RelationKind.MEDIAN:
            values = [by_label[label][0] for label in labels]
            if len(values) % 2 == 0:
                return False
            mid = sorted(values)[len(values) // 2]
            return by_label[fact.subject][0] == mid and values.count(mid) == 1
        a, b = by_label[fact.subject][0], by_label[fact.object][0]

    if fact.kind == RelationKind.GREATER_THAN:
        return a > b
    if fact.kind == RelationKind.LESS_THAN:
        return a < b
    return False
