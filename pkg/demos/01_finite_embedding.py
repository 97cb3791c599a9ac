"""A qutrit entangled with three coherent states, rewritten in an orthonormal basis.

The three qumode states |0>, |a>, |-a> are not orthogonal, so the state lives in a
3x3 effective space. Choosing a^2 = 2 ln 2 makes the nearest-neighbour overlap 1/2.
"""
import numpy as np

from hybrident import classify, entropy_of_entanglement, schmidt
from hybrident.measures import embed_pure
from hybrident.states import embedding_of, qutrit_qumode_state

alpha = np.sqrt(2 * np.log(2))
state = qutrit_qumode_state(alpha)

refs, gram, emb = embedding_of(state)
print("Gram matrix of the qumode states:")
print(np.round(gram.entries.real, 4))
print("rows of the lower-triangular embedding:")
print(np.round(emb.coefficients.real, 4))

vec, dims = embed_pure(state)
print("Schmidt coefficients:", np.round(schmidt(vec, dims).coefficients, 3))
print("entropy of entanglement: %.4f ebits" % entropy_of_entanglement(vec, dims))
print("classification:", classify(state).verdict.value)

print("\nentropy grows toward log2(3) = %.4f as the coherent states separate:" % np.log2(3))
for a in (0.0, 0.5, 1.0, 2.0, 6.0):
    v, d = embed_pure(qutrit_qumode_state(a))
    print(f"  alpha = {a:3.1f}: {entropy_of_entanglement(v, d):.4f}")
