"""Finite density-matrix embedding of DV-like hybrid states and the entanglement quantifiers.

Composite basis ordering is row-major throughout: ``|m>_A |j>_B`` is index
``m * d_B + j``, and three parties extend this lexicographically.
Logarithms are base 2 (ebits).
"""

from dataclasses import dataclass

import numpy as np

from .density import DensityMatrix, pure_density
from .errors import NotNormalized, OverlapOutOfRange, TrulyHybridInput, WrongDims
from .fock import partial_trace
from .gram import DEFAULT_RANK_TOL
from .states import Verdict, classify, embedding_of

__all__ = [
    "DensityMatrix",
    "SchmidtDecomposition",
    "TangleReport",
    "embed_state",
    "embed_pure",
    "schmidt",
    "entropy_of_entanglement",
    "partial_transpose",
    "log_negativity",
    "concurrence",
    "tripartite_tangle",
    "tripartite_embed",
    "tangle_from_state",
]

NORM_TOL = 1e-9

_SY = np.array([[0, -1j], [1j, 0]])
_SYSY = np.kron(_SY, _SY)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """``|psi> = sum_i s_i |u_i>|v_i>`` with ``u_i``, ``v_i`` the basis columns."""

    coefficients: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray

    def vector(self):
        return np.einsum("i,ai,bi->ab", self.coefficients, self.left_basis, self.right_basis).ravel()


@dataclass(frozen=True)
class TangleReport:
    c2_ab: float
    c2_ac: float
    c2_bc: float
    c2_a_bc: float
    tau_res: float
    c2_total: float


def _component_vectors(state, refs, emb):
    rows = emb.coefficients
    d, r = state.dv_dim, emb.rank
    vecs = []
    for comp in state.components:
        v = np.zeros((d, r), dtype=complex)
        for t in comp.terms:
            v[t.dv_index] += t.coeff * rows[state.ref_index(t.qumode, refs)]
        vecs.append(v.ravel())
    return vecs


def embed_state(state, rank_tol=DEFAULT_RANK_TOL):
    """Density matrix of a DV-like state on ``dv_dim (x) r``, ``r`` the Gram rank.

    Each qumode reference is replaced by its row of the inverse Gram-Schmidt
    embedding; the pure components are then mixed with their weights.
    """
    cls = classify(state, rank_tol)
    if cls.verdict is Verdict.TRULY_HYBRID:
        raise TrulyHybridInput("truly hybrid states have no finite density matrix")
    if not state.components:
        raise TrulyHybridInput("state carries no finite decomposition")
    refs, _, emb = embedding_of(state, rank_tol)
    rho = np.zeros((state.dv_dim * emb.rank,) * 2, dtype=complex)
    for comp, v in zip(state.components, _component_vectors(state, refs, emb)):
        rho += comp.weight * np.outer(v, v.conj())
    rho = (rho + rho.conj().T) / 2
    note = f"inverse Gram-Schmidt basis of {len(refs)} qumode states, rank {emb.rank}"
    return DensityMatrix(rho, (state.dv_dim, emb.rank), note)


def embed_pure(state, rank_tol=DEFAULT_RANK_TOL):
    """State vector of a single-component state in the embedded basis, with its dims."""
    if len(state.components) != 1:
        raise ValueError("embed_pure needs a single-component state")
    refs, _, emb = embedding_of(state, rank_tol)
    (vec,) = _component_vectors(state, refs, emb)
    return vec, (state.dv_dim, emb.rank)


def schmidt(vec, dims):
    vec = np.asarray(vec, dtype=complex)
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > NORM_TOL:
        raise NotNormalized(f"state norm is {norm!r}")
    d_a, d_b = dims
    u, s, vh = np.linalg.svd(vec.reshape(d_a, d_b))
    return SchmidtDecomposition(s, u[:, :len(s)], vh[:len(s)].T)


def _entropy_bits(probs):
    probs = probs[probs > 0]
    return float(-np.sum(probs * np.log2(probs)))


def entropy_of_entanglement(vec, dims):
    s = schmidt(vec, dims).coefficients
    return max(_entropy_bits(s**2), 0.0) + 0.0


def partial_transpose(rho, dims, sys=0):
    """Transpose the indices of subsystem ``sys`` of a bipartite operator."""
    d_a, d_b = dims
    t = np.asarray(rho).reshape(d_a, d_b, d_a, d_b)
    if sys == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(d_a * d_b, d_a * d_b)


def log_negativity(rho, cut=0):
    """``log2 || rho^{T_cut} ||_1`` for a bipartite :class:`DensityMatrix`."""
    if len(rho.dims) != 2:
        raise WrongDims(f"log negativity needs a bipartite state, got dims {rho.dims}")
    pt = partial_transpose(rho.entries, rho.dims, cut)
    pt = (pt + pt.conj().T) / 2
    trace_norm = np.sum(np.abs(np.linalg.eigvalsh(pt)))
    return max(float(np.log2(trace_norm)), 0.0)


def concurrence(rho):
    """Wootters concurrence of a two-qubit density matrix.

    With ``rho = F F^dag`` the spin-flip eigenvalue square roots are the
    singular values of ``F^T (sy (x) sy) F``; taking them directly avoids
    square roots of noise-level eigenvalues for rank-deficient states.
    """
    if isinstance(rho, DensityMatrix):
        if rho.dims != (2, 2):
            raise WrongDims(f"concurrence needs dims (2, 2), got {rho.dims}")
        mat = rho.entries
    else:
        mat = np.asarray(rho, dtype=complex)
        if mat.shape != (4, 4):
            raise WrongDims(f"concurrence needs a 4x4 matrix, got {mat.shape}")
    w, v = np.linalg.eigh((mat + mat.conj().T) / 2)
    f = v * np.sqrt(np.clip(w, 0.0, None))
    r = np.linalg.svd(f.T @ _SYSY @ f, compute_uv=False)
    return float(max(0.0, r[0] - r[1] - r[2] - r[3]))


def _check_overlap(q, name):
    if abs(q) > 1.0 + 1e-12:
        raise OverlapOutOfRange(f"|{name}| = {abs(q)!r} exceeds 1")


def tripartite_tangle(q_phi, q_psi):
    """Squared concurrences and residual tangle of ``(|0>|phi0>|psi0> + |1>|phi1>|psi1>)/sqrt(2)``.

    ``q_phi = <phi0|phi1>`` and ``q_psi = <psi0|psi1>`` are the qumode overlaps
    on parties B and C.
    """
    _check_overlap(q_phi, "q_phi")
    _check_overlap(q_psi, "q_psi")
    f = min(abs(q_phi) ** 2, 1.0)
    g = min(abs(q_psi) ** 2, 1.0)
    c2_ab = g * (1 - f)
    c2_ac = f * (1 - g)
    c2_a_bc = 1 - f * g
    tau = (1 - f) * (1 - g)
    return TangleReport(c2_ab, c2_ac, 0.0, c2_a_bc, tau, 1 - f * g)


def tripartite_embed(q_phi, q_psi):
    """Three-qubit vector of the tripartite state after orthonormalizing B and C."""
    _check_overlap(q_phi, "q_phi")
    _check_overlap(q_psi, "q_psi")
    sf = np.sqrt(max(1 - abs(q_phi) ** 2, 0.0))
    sg = np.sqrt(max(1 - abs(q_psi) ** 2, 0.0))
    v = np.zeros(8, dtype=complex)
    v[0b000] = 1
    v[0b100] = q_phi * q_psi
    v[0b110] = q_psi * sf
    v[0b101] = q_phi * sg
    v[0b111] = sf * sg
    return v / np.sqrt(2)


def tangle_from_state(vec):
    """Brute-force :class:`TangleReport` of a pure three-qubit state.

    Pairwise entries come from Wootters concurrences of the two-qubit
    reductions; ``C^2(A|BC) = 4 det rho_A``.
    """
    rho = pure_density(vec, (2, 2, 2))
    c_ab = concurrence(partial_trace(rho, [0, 1]))
    c_ac = concurrence(partial_trace(rho, [0, 2]))
    c_bc = concurrence(partial_trace(rho, [1, 2]))
    rho_a = partial_trace(rho, [0]).entries
    c2_a_bc = float(4 * np.linalg.det(rho_a).real)
    tau = c2_a_bc - c_ab**2 - c_ac**2
    return TangleReport(c_ab**2, c_ac**2, c_bc**2, c2_a_bc, tau, c_ab**2 + c_ac**2 + c_bc**2 + tau)
