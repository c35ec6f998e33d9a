#!/usr/bin/env python3
"""The tape in action: gradients, a finite-difference check, Adam on a toy fit."""

import numpy as np

from chartcap import autodiff as ad
from chartcap.autodiff import AdamState, Tape, Tensor, adam_step, gradcheck, zero_grads

# d/dx sigmoid at 0 is 0.25
x = Tensor(np.zeros(4), requires_grad=True)
with Tape() as tape:
    loss = ad.sum_all(ad.sigmoid(x))
tape.backward(loss)
print("sigmoid'(0) =", x.grad[0])

# every op's analytic gradient agrees with central finite differences
rng = np.random.default_rng(0)
err = gradcheck(
    lambda a, b: ad.sum_all(ad.tanh(ad.matmul(a, b))),
    [Tensor(rng.standard_normal((3, 4))), Tensor(rng.standard_normal((4, 2)))],
)
print(f"matmul/tanh gradcheck max relative error: {err:.2e}")

# fit y = W x with Adam; loss is mean squared error written with tape ops
true_w = rng.standard_normal((3, 3))
w = Tensor(np.zeros((3, 3)), requires_grad=True)
state = AdamState()
for step in range(300):
    xs = Tensor(rng.standard_normal(3))
    target = Tensor(xs.data @ true_w)
    with Tape() as tape:
        pred = ad.matmul(xs, w)
        diff = ad.sub(pred, target)
        loss = ad.sum_all(ad.mul(diff, diff))
    tape.backward(loss)
    adam_step({"w": w}, {"w": w.grad}, state, lr=0.05)
    zero_grads([w])
    if step % 100 == 99:
        print(f"step {step + 1}: |W - W*| = {np.abs(w.data - true_w).max():.4f}")
