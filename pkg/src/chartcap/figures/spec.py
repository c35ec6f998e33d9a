"""Figure specifications: the full ground truth behind one synthetic chart."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..colors import COLOR_NAMES

MAX_SERIES_DEFAULT = 7
VALUE_LO, VALUE_HI = 1.0, 100.0
LINE_POINTS_LO, LINE_POINTS_HI = 5, 20
DEFAULT_CANVAS = (64, 64)

_MASK64 = (1 << 64) - 1


def mix_seed(master: int, index: int) -> int:
    """Derive an independent 64-bit stream seed from (master, index).

    splitmix64 finalizer applied to master + index * golden-ratio increment;
    the standard mixer behind java.util.SplittableRandom.
    """
    z = (master + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


class FigureType(str, Enum):
    VBAR = "vbar"
    HBAR = "hbar"
    PIE = "pie"
    LINE = "line"
    DOTLINE = "dotline"

    @property
    def is_line(self) -> bool:
        return self in (FigureType.LINE, FigureType.DOTLINE)

    @property
    def display_name(self) -> str:
        return {
            FigureType.VBAR: "vertical bar chart",
            FigureType.HBAR: "horizontal bar chart",
            FigureType.PIE: "pie chart",
            FigureType.LINE: "line plot",
            FigureType.DOTLINE: "dot line plot",
        }[self]


FIGURE_TYPES = list(FigureType)


@dataclass(frozen=True)
class Series:
    label: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class FigureSpec:
    figure_type: FigureType
    series: tuple[Series, ...]
    x_points: tuple[float, ...]  # empty unless figure_type is a line kind
    seed: int
    canvas: tuple[int, int] = DEFAULT_CANVAS  # (height, width)

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.series]

    def to_json(self) -> str:
        """Serialize with stable field order."""
        obj = {
            "figure_type": self.figure_type.value,
            "series": [{"label": s.label, "values": list(s.values)} for s in self.series],
            "x_points": list(self.x_points),
            "seed": self.seed,
            "canvas": list(self.canvas),
        }
        return json.dumps(obj)

    @staticmethod
    def from_json(text: str) -> "FigureSpec":
        obj = json.loads(text)
        return FigureSpec(
            figure_type=FigureType(obj["figure_type"]),
            series=tuple(Series(s["label"], tuple(s["values"])) for s in obj["series"]),
            x_points=tuple(obj["x_points"]),
            seed=obj["seed"],
            canvas=tuple(obj["canvas"]),
        )


def sample_figure_spec(
    seed: int,
    figure_type: FigureType | None = None,
    max_series: int = MAX_SERIES_DEFAULT,
    canvas: tuple[int, int] = DEFAULT_CANVAS,
) -> FigureSpec:
    """Deterministically draw a figure specification from a 64-bit seed.

    Bars and pie slices get one value each, uniform in [1, 100]; line series
    are random walks clipped to [0, 100] over 5..20 shared x points. Labels
    are drawn without replacement from the color vocabulary.
    """
    rng = np.random.default_rng(seed & _MASK64)
    if figure_type is None:
        figure_type = FIGURE_TYPES[int(rng.integers(0, len(FIGURE_TYPES)))]

    n_series = int(rng.integers(2, max_series + 1))
    picks = rng.choice(len(COLOR_NAMES), size=n_series, replace=False)
    labels = [COLOR_NAMES[int(i)] for i in picks]

    if figure_type.is_line:
        n_points = int(rng.integers(LINE_POINTS_LO, LINE_POINTS_HI + 1))
        steps = rng.uniform(0.5, 1.5, size=n_points - 1)
        x_points = tuple(np.concatenate([[0.0], np.cumsum(steps)]).tolist())
        series = []
        for label in labels:
            y = np.empty(n_points)
            y[0] = rng.uniform(20.0, 80.0)
            for j in range(1, n_points):
                y[j] = min(100.0, max(0.0, y[j - 1] + rng.uniform(-15.0, 15.0)))
            series.append(Series(label, tuple(y.tolist())))
    else:
        x_points = ()
        values = rng.uniform(VALUE_LO, VALUE_HI, size=n_series)
        series = [Series(label, (float(v),)) for label, v in zip(labels, values)]

    return FigureSpec(
        figure_type=figure_type,
        series=tuple(series),
        x_points=x_points,
        seed=seed & _MASK64,
        canvas=canvas,
    )
