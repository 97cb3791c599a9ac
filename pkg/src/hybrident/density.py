"""Density matrices on finite composite spaces."""

from dataclasses import dataclass

import numpy as np

from .errors import DimsMismatch, InvalidState

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-8


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive operator with explicit subsystem dims.

    Composite indices are row-major: for dims ``(dA, dB)`` the basis state
    ``|m>|j>`` sits at ``m * dB + j``, extended lexicographically for more
    parties.
    """

    entries: np.ndarray
    dims: tuple
    basis_note: str = ""

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "entries", rho)
        object.__setattr__(self, "dims", dims)
        size = int(np.prod(dims))
        if rho.shape != (size, size):
            raise DimsMismatch(f"matrix shape {rho.shape} does not match dims {dims}")
        if np.max(np.abs(rho - rho.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise InvalidState("density matrix is not Hermitian")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidState(f"density matrix has trace {tr!r}")
        evals = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
        if evals[0] < -PSD_TOL:
            raise InvalidState(f"density matrix has eigenvalue {evals[0]!r}")

    @property
    def dim(self):
        return self.entries.shape[0]

    def purity(self):
        return float(np.real(np.trace(self.entries @ self.entries)))

    def eigenvalues(self):
        """Eigenvalues of the symmetrized matrix with tiny negatives clamped to 0."""
        rho = (self.entries + self.entries.conj().T) / 2
        return np.clip(np.linalg.eigvalsh(rho), 0.0, None)


def pure_density(vec, dims, basis_note=""):
    vec = np.asarray(vec, dtype=complex)
    return DensityMatrix(np.outer(vec, vec.conj()), dims, basis_note)


def trace_distance(rho, sigma):
    """Half the trace norm of the difference of two density matrices."""
    a = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    b = sigma.entries if isinstance(sigma, DensityMatrix) else np.asarray(sigma)
    diff = a - b
    diff = (diff + diff.conj().T) / 2
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


def fidelity(rho, sigma):
    """Uhlmann fidelity ``(tr sqrt(sqrt(rho) sigma sqrt(rho)))**2``."""
    a = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    b = sigma.entries if isinstance(sigma, DensityMatrix) else np.asarray(sigma)
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    sqrt_a = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    inner = sqrt_a @ b @ sqrt_a
    evals = np.linalg.eigvalsh((inner + inner.conj().T) / 2)
    return float(np.sum(np.sqrt(np.clip(evals, 0.0, None))) ** 2)
