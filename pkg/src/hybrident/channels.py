"""One-sided thermal photon-noise channel acting on the cat-entangled qubit-qumode state.

Three routes to the same output state:

* :func:`zero_temp_output` - the closed-form effective qubit-qubit matrix
  when no thermal photons are present;
* :func:`fock_sum_output` - the thermal mixture expanded over environment
  Fock states, built from photon-added coherent kets;
* :func:`thermal_dilation_output` - brute force: a beam splitter couples
  the mode to a thermal environment in a truncated Fock space, and the
  environment is traced out.

The input is always ``(|0>|alpha> + |1>|-alpha>)/sqrt(2)``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import comb, gammaln

from . import fock
from .density import DensityMatrix
from .errors import CutoffInsufficient, DimsMismatch, InvalidFamilyParams

FOCK_SUM_TAIL = 1e-10


@dataclass(frozen=True)
class ChannelParams:
    alpha: complex
    eta: float
    n_th: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        if not 0.0 <= self.eta <= 1.0:
            raise InvalidFamilyParams(f"transmissivity must lie in [0, 1], got {self.eta}")
        if self.n_th < 0:
            raise InvalidFamilyParams(f"mean thermal photon number must be >= 0, got {self.n_th}")

    @property
    def theta(self):
        return fock.transmissivity_angle(self.eta)


def cat_input_vector(alpha, space):
    """Input state on ``qubit (x) Fock`` as a flat vector."""
    psi = np.zeros((2, space.dim), dtype=complex)
    psi[0] = fock.coherent_vector(alpha, space)
    psi[1] = fock.coherent_vector(-alpha, space)
    return psi.ravel() / np.sqrt(2)


def _apply_beamsplitter(theta, vecs, dim_b, dim_e):
    """Apply the beam splitter to rows of ``vecs`` living in ``B (x) E``."""
    out = np.zeros_like(vecs)
    for idx, block in fock._beamsplitter_blocks(float(theta), dim_b, dim_e):
        out[:, idx] = vecs[:, idx] @ block.T
    return out


def thermal_dilation_output(params, space, buffer=fock.DEFAULT_BUFFER):
    """Channel output by explicit beam-splitter dilation, reported on ``qubit (x) space``.

    Both the signal and the environment are simulated at ``space.cutoff +
    buffer`` so that edge effects of the truncated beam splitter stay outside
    the reported subspace. The thermal environment is handled one Fock
    state at a time, ``rho_E = sum_n p_n |n><n|``.
    """
    sim = space.extended(buffer)
    dim = sim.dim
    cat = cat_input_vector(params.alpha, sim).reshape(2, dim)
    env = np.diag(fock.thermal_state(params.n_th, sim).entries).real
    theta = params.theta
    rho = np.zeros((2 * dim, 2 * dim), dtype=complex)
    for n, weight in enumerate(env):
        if weight == 0.0:
            continue
        # |psi>_{AB} |n>_E as two rows (qubit index) over B (x) E
        joint = np.zeros((2, dim, dim), dtype=complex)
        joint[:, :, n] = cat
        joint = _apply_beamsplitter(theta, joint.reshape(2, dim * dim), dim, dim)
        m = joint.reshape(2 * dim, dim)
        rho += weight * (m @ m.conj().T)
    keep = np.concatenate([np.arange(space.dim), dim + np.arange(space.dim)])
    out = rho[np.ix_(keep, keep)]
    lost = 1.0 - np.trace(out).real
    if lost > max(space.truncation_budget, 1e-10):
        raise CutoffInsufficient(
            f"output loses weight {lost:.3g} above cutoff {space.cutoff}",
            suggested_cutoff=space.cutoff + buffer,
        )
    out = out / np.trace(out).real
    out = (out + out.conj().T) / 2
    return DensityMatrix(out, (2, space.dim), "qubit (x) truncated Fock, beam-splitter dilation")


def zero_temp_output(alpha, eta):
    """Effective qubit-qubit density matrix of the output without thermal photons.

    With ``kappa = exp(-2 (1-eta) |alpha|^2)`` and
    ``lam = <-sqrt(eta) alpha|sqrt(eta) alpha> = exp(-2 eta |alpha|^2)``.
    """
    if not 0.0 <= eta <= 1.0:
        raise InvalidFamilyParams(f"transmissivity must lie in [0, 1], got {eta}")
    a2 = abs(alpha) ** 2
    kappa = np.exp(-2 * (1 - eta) * a2)
    lam = np.exp(-2 * eta * a2)
    r = np.sqrt(max(1 - lam**2, 0.0))
    rho = 0.5 * np.array(
        [
            [1, 0, lam * kappa, kappa * r],
            [0, 0, 0, 0],
            [lam * kappa, 0, lam**2, lam * r],
            [kappa * r, 0, lam * r, 1 - lam**2],
        ],
        dtype=complex,
    )
    return DensityMatrix(rho, (2, 2), "inverse Gram-Schmidt basis of |+-sqrt(eta) alpha>")


def zero_temp_concurrence(alpha, eta):
    """Concurrence of :func:`zero_temp_output`, ``kappa * sqrt(1 - lam^2)``."""
    a2 = abs(alpha) ** 2
    return float(np.exp(-2 * (1 - eta) * a2) * np.sqrt(-np.expm1(-4 * eta * a2)))


def f_coefficient(n, k, eta):
    """``binom(n, k) sqrt(eta)^(n-k) (-sqrt(1-eta))^k / sqrt(n!)``."""
    return float(
        comb(n, k, exact=True)
        * np.sqrt(eta) ** (n - k)
        * (-np.sqrt(1 - eta)) ** k
        * np.exp(-0.5 * gammaln(n + 1))
    )


def default_n_max(n_th, tail=FOCK_SUM_TAIL):
    """Smallest ``n`` whose thermal tail above it is below ``tail``."""
    if n_th == 0:
        return 0
    n = 0
    while fock.thermal_tail(n_th, n) >= tail:
        n += 1
    return n


def fock_sum_matrix(params, n_max, space):
    """Partial Fock sum over environment photon numbers ``0..n_max`` as a raw matrix.

    Each environment photon number ``n`` contributes
    ``sum_{k,l} f_nk f_nl A_kl a^dag^k|sqrt(eta) a_i><sqrt(eta) a_j|a^l`` on
    the qubit block ``|i><j|``, where ``a_0 = alpha``, ``a_1 = -alpha`` and
    the environment overlap is
    ``A_kl = <sqrt(1-eta) a_j| a^(n-l) a^dag^(n-k) |sqrt(1-eta) a_i>``,
    evaluated by Fock-basis inner products. The trace falls short of one by
    the thermal weight above ``n_max``; no tail check is made.
    """
    eta, n_th = params.eta, params.n_th
    amps = (params.alpha, -params.alpha)
    s_eta, s_env = np.sqrt(eta), np.sqrt(1 - eta)
    env_cut = fock.fock_required_cutoff(photon_added=[(n_max, s_env * params.alpha)])
    env_space = fock.TruncatedFockSpace(max(env_cut, 2))
    # signal kets are only needed on the reported subspace; no tail check there
    sig_space = fock.TruncatedFockSpace(space.cutoff, truncation_budget=np.inf)
    weights = fock.thermal_distribution(n_th, n_max + 1)
    blocks = np.zeros((2, 2, space.dim, space.dim), dtype=complex)
    for n in range(n_max + 1):
        w = weights[n]
        if w == 0.0:
            continue
        f = np.array([f_coefficient(n, k, eta) for k in range(n + 1)])
        kets = [
            np.array([fock.photon_added_ket(k, s_eta * a, sig_space) for k in range(n + 1)])
            for a in amps
        ]
        # env[i][k] = a^dag^(n-k) |sqrt(1-eta) a_i>
        env = [
            np.array([fock.photon_added_ket(n - k, s_env * a, env_space) for k in range(n + 1)])
            for a in amps
        ]
        for i in range(2):
            for j in range(2):
                # ov[k, l] = <a^dag^(n-l) s a_j | a^dag^(n-k) s a_i>, s = sqrt(1-eta)
                ov = env[i] @ env[j].conj().T
                coeff = np.outer(f, f) * ov
                blocks[i, j] += 0.5 * w * (kets[i].T @ coeff @ kets[j].conj())
    rho = blocks.transpose(0, 2, 1, 3).reshape(2 * space.dim, 2 * space.dim)
    return (rho + rho.conj().T) / 2


def fock_sum_output(params, n_max=None, space=None):
    """Channel output assembled from the environment Fock-state expansion.

    ``n_max`` defaults to the smallest value whose thermal tail is below
    ``FOCK_SUM_TAIL``; see :func:`fock_sum_matrix` for the terms.
    """
    if n_max is None:
        n_max = default_n_max(params.n_th)
    tail = fock.thermal_tail(params.n_th, n_max)
    if tail > FOCK_SUM_TAIL:
        raise CutoffInsufficient(
            f"thermal weight {tail:.3g} above n_max={n_max}",
            suggested_cutoff=default_n_max(params.n_th),
        )
    if space is None:
        space = fock.TruncatedFockSpace(
            fock.fock_required_cutoff(photon_added=[(n_max, np.sqrt(params.eta) * params.alpha)])
        )
    rho = fock_sum_matrix(params, n_max, space)
    return DensityMatrix(rho, (2, space.dim), f"qubit (x) truncated Fock, Fock-sum n_max={n_max}")


def project_to_span(rho, vectors):
    """Compress a ``qubit (x) Fock`` matrix onto the span of the given Fock vectors.

    The span is orthonormalized by QR; the result is unnormalized when
    ``rho`` has weight outside the span.
    """
    q, _ = np.linalg.qr(np.asarray(vectors, dtype=complex).T)
    d_b = q.shape[0]
    mat = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    if mat.shape[0] != 2 * d_b:
        raise DimsMismatch(f"matrix of size {mat.shape[0]} does not act on qubit (x) {d_b}")
    iso = np.kron(np.eye(2), q)
    return iso.conj().T @ mat @ iso
