"""Concurrence of the pure-loss channel output.

Without thermal photons the output fits in a 2x2 effective space, so the
Wootters concurrence applies directly. It is compared with a short closed form.
"""
import numpy as np

from hybrident import concurrence, zero_temp_output
from hybrident.channels import zero_temp_concurrence

print(" alpha   eta   C (matrix)   C (closed form)")
for alpha in (0.3, 1.0, 2.0):
    for eta in (0.3, 2 / 3, 1.0):
        c = concurrence(zero_temp_output(alpha, eta))
        print(f"{alpha:6.2f} {eta:5.2f}   {c:.8f}   {zero_temp_concurrence(alpha, eta):.8f}")

etas = np.linspace(0, 1, 201)
best = [etas[np.argmax([zero_temp_concurrence(a, e) for e in etas])] for a in (0.5, 1, 2)]
print("\ntransmissivity maximizing C for alpha = 0.5, 1, 2:", np.round(best, 3))
