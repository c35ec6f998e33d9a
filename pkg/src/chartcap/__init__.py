"""chartcap: a desk-scale chart-captioning laboratory.

Synthetic figure generation with ground-truth relation facts, a template
caption engine, exact captioning metrics, a tape-based autodiff core, an
attention encoder-decoder captioner, and a hybrid MLE + self-critical
training loop.
"""

__version__ = "0.1.0"
