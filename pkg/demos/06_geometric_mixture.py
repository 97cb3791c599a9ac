"""A truly hybrid mixture with geometric weights, and a simpler bound s'.

The mixture sum_n (1-x) x^(n-1) |cat(sqrt(n) alpha)><...| uses infinitely many
coherent amplitudes. s' >= s, so s' < 0 is a (weaker) sufficient test.
"""
import numpy as np

from hybrident import s_geometric, s_prime_geometric

xs = (0.02, 0.05, 0.1, 0.3, 0.6)
alphas = (0.1, 0.3, 0.6, 1.0)
print("s' (x rows, alpha columns); * marks detection")
for x in xs:
    cells = []
    for a in alphas:
        r = s_prime_geometric(x, a)
        cells.append(f"{r.s_value:+.2e}{'*' if r.detected else ' '}")
    print(f"x = {x:4.2f}: " + "  ".join(cells))

gap = min(s_prime_geometric(x, a).s_value - s_geometric(x, a).s_value
          for x in np.linspace(0.02, 0.9, 20) for a in np.linspace(0.05, 2, 20))
print("\nsmallest s' - s on a 20x20 grid:", f"{gap:.3e}")
print("s'(x, 0) =", s_prime_geometric(0.4, 0.0).s_value)
