"""Gram matrices of nonorthogonal qumode states and their inverse Gram-Schmidt embedding.

Convention: ``G[i, j] = <psi_j|psi_i>``. Row ``i`` of an :class:`Embedding`
holds the coordinates of ``|psi_i>`` in the orthonormal basis, so that
``A @ A.conj().T == G``. For real overlaps the distinction is invisible.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionZero, NotPSD, OverlapOutOfRange

DEFAULT_RANK_TOL = 1e-10
OVERLAP_TOL = 1e-9
PSD_CLAMP = -1e-10


@dataclass(frozen=True)
class GramMatrix:
    entries: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.entries, dtype=complex)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError(f"Gram matrix must be square, got shape {g.shape}")
        if g.shape[0] == 0:
            raise DimensionZero("Gram matrix of zero states")
        object.__setattr__(self, "entries", g)

    @property
    def n(self):
        return self.entries.shape[0]

    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(self.entries)[0])

    def is_valid(self, tol=1e-12):
        g = self.entries
        return (
            np.array_equal(g, g.conj().T)
            and np.allclose(np.diag(g), 1.0, atol=tol, rtol=0)
            and self.min_eigenvalue() >= PSD_CLAMP
        )


@dataclass(frozen=True)
class Embedding:
    """Lower-trapezoidal coordinates ``a_ij`` of each state (rows) in an orthonormal basis."""

    coefficients: np.ndarray
    rank: int
    tolerance_used: float
    pivots: tuple = ()

    def reconstruct(self):
        a = self.coefficients
        return a @ a.conj().T


def build_gram(overlap, n):
    """Assemble a Gram matrix from a pairwise overlap function.

    ``overlap(i, j)`` must return ``<psi_i|psi_j>``. Only ``i <= j`` is
    queried; the other half is filled by conjugation, so the result is
    exactly Hermitian.
    """
    if n <= 0:
        raise DimensionZero("cannot build a Gram matrix of zero states")
    g = np.eye(n, dtype=complex)
    for i in range(n):
        for j in range(i, n):
            value = complex(overlap(i, j))
            if abs(value) > 1.0 + OVERLAP_TOL:
                raise OverlapOutOfRange(f"|<psi_{i}|psi_{j}>| = {abs(value)!r} exceeds 1")
            if i == j:
                if abs(value - 1.0) > OVERLAP_TOL:
                    raise OverlapOutOfRange(f"state {i} is not normalized: <psi|psi> = {value!r}")
                continue
            g[j, i] = value
            g[i, j] = value.conjugate()
    return GramMatrix(g)


def inverse_gram_schmidt(gram, rank_tol=DEFAULT_RANK_TOL):
    """Express each state as a lower-triangular combination of orthonormal vectors.

    Rows are solved one after another: the entries of row ``i`` on the
    already-established basis vectors follow from a forward substitution
    against the earlier rows, and the new diagonal entry is the real root
    ``sqrt(1 - sum |a_ij|^2)``. A pivot at or below ``rank_tol`` means the
    state lies in the span of its predecessors; no new basis vector is
    opened and the embedding becomes ``n x r`` with ``r < n``.
    """
    g = gram.entries if isinstance(gram, GramMatrix) else GramMatrix(gram).entries
    n = g.shape[0]
    a = np.zeros((n, n), dtype=complex)
    pivots = []  # row that opened each basis vector
    for i in range(n):
        for col, p in enumerate(pivots):
            acc = g[i, p] - np.dot(a[i, :col], a[p, :col].conj())
            a[i, col] = acc / a[p, col].real
        r = len(pivots)
        pivot = g[i, i].real - np.sum(np.abs(a[i, :r]) ** 2)
        if pivot < -rank_tol:
            raise NotPSD(f"negative pivot {pivot!r} at row {i}; overlaps are inconsistent")
        if pivot > rank_tol:
            a[i, r] = np.sqrt(pivot)
            pivots.append(i)
    rank = len(pivots)
    return Embedding(a[:, :rank].copy(), rank, rank_tol, tuple(pivots))


def numerical_rank(gram, rank_tol=DEFAULT_RANK_TOL):
    g = gram.entries if isinstance(gram, GramMatrix) else np.asarray(gram)
    evals = np.linalg.eigvalsh(g)
    top = evals[-1]
    if top <= 0:
        return 0
    return int(np.sum(evals > rank_tol * top))
