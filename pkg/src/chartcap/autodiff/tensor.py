"""Dense float64 tensors with reverse-mode autodiff on an explicit tape.

The op set is exactly what the captioner needs. Ops record onto the
innermost active tape (context manager); with no tape active they are plain
forward computations, which is how inference-time decoding runs.
"""

from __future__ import annotations

import numpy as np

from ..errors import NonScalarLoss, ShapeMismatch, TapeConsumed

_ACTIVE_TAPES: list["Tape"] = []


class Tensor:
    __slots__ = ("data", "grad", "requires_grad")

    def __init__(self, data, requires_grad: bool = False):
        # asarray keeps 0-d scalars 0-d (ascontiguousarray would promote to 1-d)
        self.data = np.asarray(data, dtype=np.float64)
        self.grad = None
        self.requires_grad = requires_grad

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    def item(self) -> float:
        return float(self.data)

    def __repr__(self) -> str:
        return f"Tensor(shape={self.data.shape}, requires_grad={self.requires_grad})"

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __matmul__(self, other):
        return matmul(self, other)

    def __neg__(self):
        return neg(self)


class _Node:
    __slots__ = ("out", "parents", "vjp")

    def __init__(self, out, parents, vjp):
        self.out = out
        self.parents = parents
        self.vjp = vjp


class Tape:
    """Append-only record of operations; backward walks it once, in reverse."""

    def __init__(self):
        self.nodes: list[_Node] = []
        self.watched: list[Tensor] = []
        self._watched_ids: set[int] = set()
        self._produced_ids: set[int] = set()
        self.consumed = False

    def __enter__(self) -> "Tape":
        _ACTIVE_TAPES.append(self)
        return self

    def __exit__(self, *exc) -> None:
        _ACTIVE_TAPES.pop()

    def watch(self, t: Tensor) -> None:
        if id(t) not in self._watched_ids:
            self._watched_ids.add(id(t))
            self.watched.append(t)

    def backward(self, loss: Tensor) -> None:
        """Accumulate dLoss/dLeaf into .grad of every watched leaf."""
        if self.consumed:
            raise TapeConsumed("backward already ran on this tape")
        if loss.data.shape != ():
            raise NonScalarLoss(f"loss must be scalar, got shape {loss.data.shape}")
        self.consumed = True
        loss.grad = np.ones(())
        for node in reversed(self.nodes):
            g = node.out.grad
            if g is None:
                continue
            for parent, pg in zip(node.parents, node.vjp(g)):
                if not parent.requires_grad:
                    continue
                if parent.grad is None:
                    # copy: vjp outputs may alias the upstream gradient
                    parent.grad = np.array(pg)
                else:
                    parent.grad += pg
        for leaf in self.watched:
            if leaf.grad is None:
                leaf.grad = np.zeros_like(leaf.data)


def _record(out: Tensor, parents: tuple[Tensor, ...], vjp) -> Tensor:
    if _ACTIVE_TAPES and any(p.requires_grad for p in parents):
        out.requires_grad = True
        tape = _ACTIVE_TAPES[-1]
        tape.nodes.append(_Node(out, parents, vjp))
        tape._produced_ids.add(id(out))
        for p in parents:
            # watch leaves so uninfluenced ones still receive zero grads
            if p.requires_grad and id(p) not in tape._produced_ids:
                tape.watch(p)
    return out


# ---------------------------------------------------------------------------
# elementwise and arithmetic ops


def _same_shape(op, a, b):
    if a.data.shape != b.data.shape:
        raise ShapeMismatch(op, a.data.shape, b.data.shape)


def add(a: Tensor, b: Tensor) -> Tensor:
    """Elementwise add; also allows adding a vector along the last axis."""
    if a.data.shape == b.data.shape:
        out = Tensor(a.data + b.data)
        return _record(out, (a, b), lambda g: (g, g))
    if b.data.shape == a.data.shape[-1:] and a.data.ndim > 1:
        out = Tensor(a.data + b.data)
        axes = tuple(range(a.data.ndim - 1))
        return _record(out, (a, b), lambda g: (g, g.sum(axis=axes)))
    raise ShapeMismatch("add", a.data.shape, b.data.shape)


def sub(a: Tensor, b: Tensor) -> Tensor:
    _same_shape("sub", a, b)
    out = Tensor(a.data - b.data)
    return _record(out, (a, b), lambda g: (g, -g))


def mul(a: Tensor, b: Tensor) -> Tensor:
    _same_shape("mul", a, b)
    out = Tensor(a.data * b.data)
    return _record(out, (a, b), lambda g: (g * b.data, g * a.data))


def scale(a: Tensor, c: float) -> Tensor:
    c = float(c)
    out = Tensor(a.data * c)
    return _record(out, (a,), lambda g: (g * c,))


def neg(a: Tensor) -> Tensor:
    out = Tensor(-a.data)
    return _record(out, (a,), lambda g: (-g,))


def matmul(a: Tensor, b: Tensor) -> Tensor:
    ad, bd = a.data, b.data
    if ad.shape[-1] != bd.shape[0] or ad.ndim > 2 or bd.ndim > 2:
        raise ShapeMismatch("matmul", ad.shape, bd.shape)
    out = Tensor(ad @ bd)

    def vjp(g):
        if ad.ndim == 2 and bd.ndim == 2:
            return g @ bd.T, ad.T @ g
        if ad.ndim == 1 and bd.ndim == 2:
            return g @ bd.T, np.outer(ad, g)
        if ad.ndim == 2 and bd.ndim == 1:
            return np.outer(g, bd), ad.T @ g
        return g * bd, g * ad  # 1D @ 1D

    return _record(out, (a, b), vjp)


def sigmoid(a: Tensor) -> Tensor:
    x = a.data
    z = np.exp(-np.abs(x))  # overflow-safe in both tails
    y = np.where(x >= 0, 1.0 / (1.0 + z), z / (1.0 + z))
    out = Tensor(y)
    return _record(out, (a,), lambda g: (g * y * (1.0 - y),))


def tanh(a: Tensor) -> Tensor:
    y = np.tanh(a.data)
    out = Tensor(y)
    return _record(out, (a,), lambda g: (g * (1.0 - y * y),))


def relu(a: Tensor) -> Tensor:
    y = np.maximum(a.data, 0.0)
    out = Tensor(y)
    return _record(out, (a,), lambda g: (g * (a.data > 0.0),))


def log(a: Tensor) -> Tensor:
    out = Tensor(np.log(a.data))
    return _record(out, (a,), lambda g: (g / a.data,))


def sum_all(a: Tensor) -> Tensor:
    out = Tensor(a.data.sum())
    return _record(out, (a,), lambda g: (g * np.ones_like(a.data),))


def mean_pool_all(a: Tensor) -> Tensor:
    """Mean over every axis but the last: (m, d) feature maps -> (d,)."""
    axes = tuple(range(a.data.ndim - 1))
    count = 1
    for ax in axes:
        count *= a.data.shape[ax]
    out = Tensor(a.data.mean(axis=axes))
    return _record(out, (a,), lambda g: (np.broadcast_to(g / count, a.data.shape).copy(),))


def softmax(a: Tensor, axis: int = -1) -> Tensor:
    if not -a.data.ndim <= axis < a.data.ndim:
        raise ShapeMismatch("softmax", a.data.shape, (axis,))
    shifted = a.data - a.data.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    y = e / e.sum(axis=axis, keepdims=True)
    out = Tensor(y)

    def vjp(g):
        dot = (g * y).sum(axis=axis, keepdims=True)
        return ((g - dot) * y,)

    return _record(out, (a,), vjp)


def maxout(a: Tensor, b: Tensor) -> Tensor:
    """Elementwise max of two pre-activation pieces (2-piece maxout)."""
    _same_shape("maxout", a, b)
    mask = a.data >= b.data  # ties route to the first piece
    out = Tensor(np.where(mask, a.data, b.data))
    return _record(out, (a, b), lambda g: (g * mask, g * (~mask)))


# ---------------------------------------------------------------------------
# shape and indexing ops


def reshape(a: Tensor, shape) -> Tensor:
    out = Tensor(a.data.reshape(shape))
    return _record(out, (a,), lambda g: (g.reshape(a.data.shape),))


def concat(tensors: list[Tensor], axis: int = 0) -> Tensor:
    datas = [t.data for t in tensors]
    out = Tensor(np.concatenate(datas, axis=axis))
    sizes = [d.shape[axis] for d in datas]
    offsets = np.cumsum([0] + sizes)

    def vjp(g):
        slicer = [slice(None)] * g.ndim
        pieces = []
        for k in range(len(sizes)):
            slicer[axis] = slice(offsets[k], offsets[k + 1])
            pieces.append(g[tuple(slicer)])
        return tuple(pieces)

    return _record(out, tuple(tensors), vjp)


def slice_(a: Tensor, key) -> Tensor:
    out = Tensor(np.array(a.data[key]))

    def vjp(g):
        ga = np.zeros_like(a.data)
        ga[key] += g
        return (ga,)

    return _record(out, (a,), vjp)


def gather_rows(a: Tensor, ids) -> Tensor:
    """Rows of a 2D table: the embedding lookup."""
    ids = np.asarray(ids, dtype=np.intp)
    out = Tensor(a.data[ids])

    def vjp(g):
        ga = np.zeros_like(a.data)
        np.add.at(ga, ids, g)
        return (ga,)

    return _record(out, (a,), vjp)


def repeat_rows(a: Tensor, times: int) -> Tensor:
    """Each row repeated `times` consecutively: (m, d) -> (m*times, d)."""
    out = Tensor(np.repeat(a.data, times, axis=0))
    m, d = a.data.shape
    return _record(out, (a,), lambda g: (g.reshape(m, times, d).sum(axis=1),))


def tile_rows(a: Tensor, times: int) -> Tensor:
    """Whole block repeated `times`: (m, d) -> (times*m, d)."""
    out = Tensor(np.tile(a.data, (times, 1)))
    m, d = a.data.shape
    return _record(out, (a,), lambda g: (g.reshape(times, m, d).sum(axis=0),))


# ---------------------------------------------------------------------------
# convolution


def _same_pad(size: int, k: int, stride: int) -> tuple[int, int, int]:
    out = -(-size // stride)
    pad = max((out - 1) * stride + k - size, 0)
    return out, pad // 2, pad - pad // 2


def conv2d(x: Tensor, kernel: Tensor, stride: int = 2) -> Tensor:
    """Same-padded strided convolution; x is (H, W, Cin), kernel (kh, kw, Cin, Cout)."""
    h, w, cin = x.data.shape
    kh, kw, kcin, cout = kernel.data.shape
    if kcin != cin:
        raise ShapeMismatch("conv2d", x.data.shape, kernel.data.shape)
    out_h, pt, pb = _same_pad(h, kh, stride)
    out_w, pl, pr = _same_pad(w, kw, stride)
    xp = np.pad(x.data, ((pt, pb), (pl, pr), (0, 0)))

    cols = np.empty((out_h, out_w, kh, kw, cin))
    for a in range(kh):
        for b in range(kw):
            cols[:, :, a, b, :] = xp[a : a + stride * out_h : stride, b : b + stride * out_w : stride, :]
    cols2 = cols.reshape(out_h * out_w, kh * kw * cin)
    w2 = kernel.data.reshape(kh * kw * cin, cout)
    out = Tensor((cols2 @ w2).reshape(out_h, out_w, cout))

    def vjp(g):
        g2 = g.reshape(out_h * out_w, cout)
        gk = (cols2.T @ g2).reshape(kernel.data.shape)
        gcols = (g2 @ w2.T).reshape(out_h, out_w, kh, kw, cin)
        gxp = np.zeros_like(xp)
        for a in range(kh):
            for b in range(kw):
                gxp[a : a + stride * out_h : stride, b : b + stride * out_w : stride, :] += gcols[
                    :, :, a, b, :
                ]
        gx = gxp[pt : pt + h, pl : pl + w, :]
        return gx, gk

    return _record(out, (x, kernel), vjp)


# ---------------------------------------------------------------------------
# helpers


def parameter(data) -> Tensor:
    """Leaf tensor with requires_grad set."""
    return Tensor(data, requires_grad=True)


def zero_grads(tensors) -> None:
    for t in tensors:
        t.grad = None


def add_many(tensors: list[Tensor]) -> Tensor:
    """Left fold of add; sums a nonempty list of same-shaped tensors."""
    acc = tensors[0]
    for t in tensors[1:]:
        acc = add(acc, t)
    return acc
