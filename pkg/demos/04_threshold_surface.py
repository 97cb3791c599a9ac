"""How much thermal noise the witness tolerates, and the best coherent amplitude.

witness_threshold(alpha, eta) is the largest mean thermal photon number for
which s < 0. Its maximum over alpha does not depend on eta.
"""
import numpy as np

from hybrident import optimal_alpha, witness_threshold
from hybrident.witness import argmax_threshold, threshold_ratio

a_opt = optimal_alpha()
print(f"optimal amplitude: {a_opt:.10f}")
for eta in (0.1, 0.5, 0.9):
    print(f"  numeric arg-max at eta = {eta}: {argmax_threshold(eta):.10f}")

print("\nthreshold / entanglement-breaking bound at the optimum:", round(threshold_ratio(a_opt**2), 6))

print("\nthreshold surface (rows eta, columns alpha):")
alphas = np.linspace(0.1, 1.5, 8)
print("eta   " + " ".join(f"{a:7.2f}" for a in alphas))
for eta in (0.2, 0.4, 0.6, 0.8, 0.9):
    print(f"{eta:4.2f}  " + " ".join(f"{witness_threshold(a, eta):7.4f}" for a in alphas))
