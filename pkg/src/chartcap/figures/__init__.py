"""Synthetic figure generation: specs, rasterization, ground-truth relations."""

from .relations import (
    BAR_PIE_KINDS,
    BINARY_KINDS,
    LINE_KINDS,
    PAIRWISE_KINDS,
    RelationFact,
    RelationKind,
    extract_relations,
    fact_holds,
    polylines_intersect,
    roughness,
    trapezoid_area,
)
from .render import MIN_CANVAS, RasterImage, render
from .spec import (
    DEFAULT_CANVAS,
    FIGURE_TYPES,
    FigureSpec,
    FigureType,
    Series,
    mix_seed,
    sample_figure_spec,
)

__all__ = [
    "BAR_PIE_KINDS",
    "BINARY_KINDS",
    "DEFAULT_CANVAS",
    "FIGURE_TYPES",
    "FigureSpec",
    "FigureType",
    "LINE_KINDS",
    "MIN_CANVAS",
    "PAIRWISE_KINDS",
    "RasterImage",
    "RelationFact",
    "RelationKind",
    "Series",
    "extract_relations",
    "fact_holds",
    "mix_seed",
    "polylines_intersect",
    "render",
    "roughness",
    "sample_figure_spec",
    "trapezoid_area",
]
