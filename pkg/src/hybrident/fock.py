"""Truncated Fock-space engine.

Serves two roles: the brute-force oracle for the thermal channel (a beam
splitter dilation traced over the environment) and the backend for Wigner
functions and the Gaussianity test of finite-dimensional states.

Ladder operators follow the usual conventions, ``destroy |n> = sqrt(n) |n-1>``.
Two-mode operators act on ``B (x) E`` with row-major indexing
``nB * dim_E + nE``.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.special import gammaln, genlaguerre, eval_hermite
from scipy.stats import poisson

from .density import DensityMatrix
from .errors import CutoffInsufficient, DimsMismatch

DEFAULT_BUDGET = 1e-12
DEFAULT_BUFFER = 10


@dataclass(frozen=True)
class TruncatedFockSpace:
    cutoff: int
    truncation_budget: float = DEFAULT_BUDGET

    def __post_init__(self):
        if self.cutoff < 2:
            raise ValueError(f"cutoff must be >= 2, got {self.cutoff}")

    @property
    def dim(self):
        return self.cutoff + 1

    def extended(self, buffer):
        return TruncatedFockSpace(self.cutoff + buffer, self.truncation_budget)


@dataclass(frozen=True)
class QuditModeOps:
    d: int
    lower: np.ndarray
    raising: np.ndarray

    def commutator(self):
        return self.lower @ self.raising - self.raising @ self.lower


def destroy(space):
    n = np.arange(1, space.dim)
    return np.diag(np.sqrt(n), 1).astype(complex)


def create(space):
    return destroy(space).conj().T


def number(space):
    return np.diag(np.arange(space.dim)).astype(complex)


def qudit_mode_ops(d):
    """Nilpotent ``d x d`` ladder matrices for a qudit.

    ``lower`` carries ``sqrt(m)`` on the first superdiagonal, so
    ``lower |m> = sqrt(m) |m-1>`` and ``lower**d == 0``.
    """
    if d < 2:
        raise ValueError(f"qudit dimension must be >= 2, got {d}")
    lower = np.diag(np.sqrt(np.arange(1, d)), 1).astype(complex)
    return QuditModeOps(d, lower, lower.conj().T.copy())


def coherent_required_cutoff(alpha, budget=DEFAULT_BUDGET):
    """Smallest cutoff whose Poisson tail for ``|alpha|^2`` is within ``budget``."""
    mean = abs(alpha) ** 2
    if mean == 0:
        return 0
    n = int(np.ceil(mean))
    while poisson.sf(n, mean) > budget:
        n += 1
    return n


def _coherent_components(alpha, dim):
    n = np.arange(dim)
    if alpha == 0:
        out = np.zeros(dim, dtype=complex)
        out[0] = 1.0
        return out
    r = abs(alpha)
    phase = np.exp(1j * np.angle(alpha) * n)
    log_mag = -r * r / 2 + n * np.log(r) - 0.5 * gammaln(n + 1)
    return np.exp(log_mag) * phase


def coherent_vector(alpha, space):
    """Coherent state ``|alpha>`` truncated to ``space`` and renormalized.

    Raises :class:`CutoffInsufficient` when the discarded Poisson tail
    exceeds the space's truncation budget.
    """
    alpha = complex(alpha)
    tail = poisson.sf(space.cutoff, abs(alpha) ** 2) if alpha != 0 else 0.0
    if tail > space.truncation_budget:
        need = coherent_required_cutoff(alpha, space.truncation_budget)
        raise CutoffInsufficient(
            f"cutoff {space.cutoff} loses norm {tail:.3g} for |alpha| = {abs(alpha):.4g}; "
            f"need cutoff >= {need}",
            suggested_cutoff=need,
        )
    vec = _coherent_components(alpha, space.dim)
    return vec / np.linalg.norm(vec)


def photon_added_norm_sq(k, alpha):
    """``|| a^dag^k |alpha> ||^2 = k! L_k(-|alpha|^2)``."""
    return float(np.exp(gammaln(k + 1)) * genlaguerre(k, 0)(-abs(alpha) ** 2))


def photon_added_ket(k, alpha, space, normalize=False):
    """``a^dag^k |alpha>`` in ``space`` (unnormalized unless asked).

    Components are evaluated in closed form, ``sqrt(m!/(m-k)!) <m-k|alpha>``,
    so no ladder-matrix edge effects arise. The discarded tail is checked
    against the budget relative to the exact norm.
    """
    alpha = complex(alpha)
    m = np.arange(space.dim)
    out = np.zeros(space.dim, dtype=complex)
    valid = m >= k
    j = m[valid] - k
    if alpha == 0:
        if k <= space.cutoff:
            out[k] = np.exp(0.5 * gammaln(k + 1))
    else:
        r = abs(alpha)
        log_mag = (
            -r * r / 2 + j * np.log(r) - 0.5 * gammaln(j + 1)
            + 0.5 * (gammaln(m[valid] + 1) - gammaln(j + 1))
        )
        out[valid] = np.exp(log_mag) * np.exp(1j * np.angle(alpha) * j)
    exact = photon_added_norm_sq(k, alpha)
    lost = 1.0 - float(np.vdot(out, out).real) / exact
    if lost > space.truncation_budget:
        raise CutoffInsufficient(
            f"cutoff {space.cutoff} loses relative norm {lost:.3g} for a^dag^{k}|{alpha}>",
            suggested_cutoff=photon_added_required_cutoff(k, alpha, space.truncation_budget),
        )
    if normalize:
        out = out / np.linalg.norm(out)
    return out


def photon_added_required_cutoff(k, alpha, budget=DEFAULT_BUDGET):
    exact = photon_added_norm_sq(k, alpha)
    cutoff = max(k + coherent_required_cutoff(alpha, budget), 2)
    while True:
        m = np.arange(k, cutoff + 1)
        j = m - k
        if alpha == 0:
            return max(k, 2)
        r = abs(alpha)
        mags = np.exp(-r * r + 2 * j * np.log(r) - 2 * gammaln(j + 1) + gammaln(m + 1))
        if 1.0 - mags.sum() / exact <= budget:
            return cutoff
        cutoff += 5


def fock_required_cutoff(*, coherent=(), photon_added=(), budget=DEFAULT_BUDGET):
    cut = 2
    for alpha in coherent:
        cut = max(cut, coherent_required_cutoff(alpha, budget))
    for k, alpha in photon_added:
        cut = max(cut, photon_added_required_cutoff(k, alpha, budget))
    return cut


def thermal_distribution(n_th, dim):
    n = np.arange(dim)
    if n_th == 0:
        out = np.zeros(dim)
        out[0] = 1.0
        return out
    q = n_th / (1.0 + n_th)
    return q**n / (1.0 + n_th)


def thermal_tail(n_th, cutoff):
    """Weight of the thermal distribution above ``cutoff``: ``q^(cutoff+1)``."""
    if n_th == 0:
        return 0.0
    return (n_th / (1.0 + n_th)) ** (cutoff + 1)


def thermal_required_cutoff(n_th, budget):
    if n_th == 0:
        return 0
    q = n_th / (1.0 + n_th)
    return max(int(np.ceil(np.log(budget) / np.log(q))) - 1, 0)


def thermal_state(n_th, space):
    """Single-mode thermal state with mean photon number ``n_th``."""
    if n_th < 0:
        raise ValueError(f"mean thermal photon number must be >= 0, got {n_th}")
    tail = thermal_tail(n_th, space.cutoff)
    if tail > space.truncation_budget:
        need = thermal_required_cutoff(n_th, space.truncation_budget)
        raise CutoffInsufficient(
            f"thermal tail {tail:.3g} above cutoff {space.cutoff}; need cutoff >= {need}",
            suggested_cutoff=need,
        )
    p = thermal_distribution(n_th, space.dim)
    p = p / p.sum()
    return DensityMatrix(np.diag(p).astype(complex), (space.dim,), f"thermal n_th={n_th}")


@lru_cache(maxsize=32)
def _beamsplitter_blocks(theta, dim_b, dim_e):
    """Block-diagonal pieces of the beam splitter, one per total photon number.

    The generator ``theta (a_E^dag a_B - a_B^dag a_E)`` conserves
    ``n_B + n_E`` even after truncation, so each fixed-total block is
    exponentiated densely on its own.
    """
    blocks = []
    for total in range(dim_b + dim_e - 1):
        nb = np.arange(max(0, total - dim_e + 1), min(dim_b - 1, total) + 1)
        ne = total - nb
        idx = nb * dim_e + ne
        size = len(nb)
        gen = np.zeros((size, size))
        # a_E^dag a_B : |nb, ne> -> sqrt(nb (ne+1)) |nb-1, ne+1>, neighbour at position i-1
        for i in range(1, size):
            amp = np.sqrt(nb[i] * (ne[i] + 1))
            gen[i - 1, i] += theta * amp
            gen[i, i - 1] -= theta * amp
        blocks.append((idx, scipy.linalg.expm(gen)))
    return tuple(blocks)


def beamsplitter(theta, space_b, space_e, dense=False):
    """Beam splitter ``exp(theta (a_E^dag a_B - a_B^dag a_E))`` on ``B (x) E``.

    Transmissivity is ``eta = cos(theta)**2``; with this sign
    ``U D_B(alpha) U^dag = D_B(sqrt(eta) alpha) D_E(sqrt(1-eta) alpha)``.
    Returned as a CSR matrix, or a dense array when ``dense`` is set.
    """
    dim_b, dim_e = space_b.dim, space_e.dim
    rows, cols, vals = [], [], []
    for idx, block in _beamsplitter_blocks(float(theta), dim_b, dim_e):
        r, c = np.meshgrid(idx, idx, indexing="ij")
        rows.append(r.ravel())
        cols.append(c.ravel())
        vals.append(block.ravel())
    size = dim_b * dim_e
    u = sp.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(size, size),
    )
    return u.toarray() if dense else u


def transmissivity_angle(eta):
    return float(np.arccos(np.sqrt(eta)))


def partial_trace(rho, keep, dims=None):
    """Reduce ``rho`` to the subsystems listed in ``keep`` (in their original order)."""
    if isinstance(rho, DensityMatrix):
        mat, dims = rho.entries, rho.dims
    else:
        mat = np.asarray(rho, dtype=complex)
        if dims is None:
            raise DimsMismatch("dims are required for a bare array")
    dims = tuple(int(d) for d in dims)
    size = int(np.prod(dims))
    if mat.shape != (size, size):
        raise DimsMismatch(f"matrix shape {mat.shape} does not match dims {dims}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise DimsMismatch(f"keep={keep} out of range for {len(dims)} subsystems")
    n = len(dims)
    tensor = mat.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n])
    col = list(letters[n:2 * n])
    for i in range(n):
        if i not in keep:
            col[i] = row[i]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, tensor)
    kept = tuple(dims[i] for i in keep)
    d = int(np.prod(kept)) if kept else 1
    return DensityMatrix(reduced.reshape(d, d), kept or (1,))


def _as_density(state):
    if isinstance(state, DensityMatrix):
        return state.entries
    arr = np.asarray(state, dtype=complex)
    if arr.ndim == 1:
        return np.outer(arr, arr.conj())
    return arr


def wigner(state, x, p):
    """Wigner function of a finite Fock-basis state at points ``(x, p)``.

    Uses the Laguerre kernel of ``|m><n|`` in the convention
    ``W(x, p) = (1/pi) int dy exp(2ipy) <x-y|rho|x+y>``, for which the
    vacuum gives ``exp(-x^2 - p^2) / pi``. ``x`` and ``p`` broadcast.
    """
    rho = _as_density(state)
    x, p = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(p, dtype=float))
    r2 = x * x + p * p
    z = np.sqrt(2.0) * (x - 1j * p)
    dim = rho.shape[0]
    gauss = np.exp(-r2) / np.pi
    w = np.zeros(x.shape, dtype=complex)
    for n in range(dim):
        for m in range(n, dim):
            coef = rho[m, n]
            if coef == 0 and rho[n, m] == 0:
                continue
            k = m - n
            kern = (
                (-1) ** n
                * np.exp(0.5 * (gammaln(n + 1) - gammaln(m + 1)))
                * z**k
                * genlaguerre(n, k)(2 * r2)
                * gauss
            )
            # kern is the Wigner function of |m><n|; |n><m| gives its conjugate
            if k == 0:
                w += coef * kern
            else:
                w += coef * kern + rho[n, m] * np.conj(kern)
    return w.real


def fock_wavefunction(n, x):
    """Position wavefunction ``<x|n> = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi))``."""
    x = np.asarray(x, dtype=float)
    log_norm = -0.5 * (n * np.log(2.0) + gammaln(n + 1) + 0.5 * np.log(np.pi))
    return eval_hermite(n, x) * np.exp(-x * x / 2 + log_norm)


def gaussianity_check(state, tol=1e-12):
    """True iff a finite-dimensional single-mode state is Gaussian.

    Such a state is Gaussian exactly when it is the vacuum, so the test
    reduces to ``<0|rho|0> >= 1 - tol``.
    """
    rho = _as_density(state)
    return bool(rho[0, 0].real >= 1.0 - tol)
