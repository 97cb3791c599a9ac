"""Log negativity of a qubit-qumode mixture of two cat-like branches.

The mixing probability p interpolates between two pure entangled states; at
p = 1/2 the mixture is least entangled for every coherent amplitude.
"""
import numpy as np

from hybrident import embed_state, log_negativity
from hybrident.states import mixed_qubit_qumode_state

ps = np.linspace(0, 1, 11)
alphas = (0.25, 0.5, 1.0, 2.0)
print("p     " + "  ".join(f"a={a:<5}" for a in alphas))
grid = np.empty((len(ps), len(alphas)))
for i, p in enumerate(ps):
    for j, a in enumerate(alphas):
        grid[i, j] = log_negativity(embed_state(mixed_qubit_qumode_state(p, a)))
    print(f"{p:4.2f}  " + "  ".join(f"{v:7.4f}" for v in grid[i]))

print("\nargmin over p for each alpha:", ps[np.argmin(grid, axis=0)])
