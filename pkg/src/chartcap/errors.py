"""Exception types shared across the package."""


class ChartCapError(Exception):
    """Base class for all chartcap errors."""


class ShapeMismatch(ChartCapError):
    """Operands have incompatible shapes; message carries both shapes."""

    def __init__(self, op: str, *shapes):
        super().__init__(f"{op}: incompatible shapes {' vs '.join(str(tuple(s)) for s in shapes)}")


class CanvasTooSmall(ChartCapError):
    """Render canvas below the 32x32 minimum."""


class InconsistentFacts(ChartCapError):
    """A relation fact does not hold against the figure data."""


class EmptyCorpus(ChartCapError):
    """Vocabulary construction got no captions."""


class InvalidConfig(ChartCapError):
    """Configuration violates a documented constraint."""


class IoFailure(ChartCapError):
    """Disk read/write failed."""


class NoReferences(ChartCapError):
    """A metric was called with an empty reference list."""


class NonScalarLoss(ChartCapError):
    """backward() requires a scalar loss tensor."""


class TapeConsumed(ChartCapError):
    """backward() was already run on this tape."""


class NoAttentionEnabled(ChartCapError):
    """Context assembly requires at least one enabled attention."""


class EmptySequence(ChartCapError):
    """Loss over an empty token sequence."""


class MetricMismatch(ChartCapError):
    """Rewards for the sampled and baseline sequences used different metrics."""


class LambdaOutOfRange(ChartCapError):
    """Hybrid-loss weight outside [0, 1]."""


class NonFiniteLoss(ChartCapError):
    """Training produced a NaN or infinite loss."""

    def __init__(self, step: int, value: float):
        self.step = step
        super().__init__(f"non-finite loss {value!r} at step {step}")


class VocabMismatch(ChartCapError):
    """Checkpoint vocabulary disagrees with its embedding table."""
