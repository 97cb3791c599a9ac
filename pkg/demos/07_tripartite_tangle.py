"""Distribution of entanglement in a qubit entangled with two qumodes.

Only the overlaps of the two qumode pairs matter. Zero overlaps give a GHZ
state; unit overlap on one side leaves a Bell pair on the other.
"""
from hybrident import tripartite_embed, tripartite_tangle
from hybrident.measures import tangle_from_state

for q_phi, q_psi in ((0, 0), (1, 1), (1, 0), (0, 1), (0.5, 0.5), (0.3, 0.8)):
    t = tripartite_tangle(q_phi, q_psi)
    b = tangle_from_state(tripartite_embed(q_phi, q_psi))
    print(f"Q = ({q_phi}, {q_psi}): tau = {t.tau_res:.4f}, C2_AB = {t.c2_ab:.4f}, C2_AC = {t.c2_ac:.4f}, "
          f"total = {t.c2_total:.4f}  (brute force tau = {b.tau_res:.4f})")
