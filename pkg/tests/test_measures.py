import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from hybrident import fock
from hybrident.channels import (
    ChannelParams,
    project_to_span,
    thermal_dilation_output,
    zero_temp_concurrence,
    zero_temp_output,
)
from hybrident.density import DensityMatrix, pure_density
from hybrident.errors import NotNormalized, OverlapOutOfRange, TrulyHybridInput, WrongDims
from hybrident.measures import (
    concurrence,
    embed_pure,
    embed_state,
    entropy_of_entanglement,
    log_negativity,
    partial_transpose,
    schmidt,
    tangle_from_state,
    tripartite_embed,
    tripartite_tangle,
)
from hybrident.states import (
    Coherent,
    cat_entangled_state,
    geometric_mixture,
    mixed_qubit_qumode_state,
    pure_state,
    qutrit_qumode_state,
    thermal_channel_output,
)

BELL = np.array([1, 0, 0, 1]) / np.sqrt(2)


def closed_concurrence(alpha, eta):
    # rank-2 mixture of (|0>|a> +- |1>|-a>)/sqrt(2): C = kappa sqrt(1 - lam^2)
    kappa = math.exp(-2 * (1 - eta) * alpha**2)
    lam = math.exp(-2 * eta * alpha**2)
    return kappa * math.sqrt(1 - lam**2)


def fock_density(state, space):
    """The same hybrid state written directly in the truncated Fock basis."""
    d = state.dv_dim
    rho = np.zeros((d * space.dim,) * 2, dtype=complex)
    for comp in state.components:
        v = np.zeros((d, space.dim), dtype=complex)
        for t in comp.terms:
            v[t.dv_index] += t.coeff * t.qumode.fock_vector(space)
        v = v.ravel()
        rho += comp.weight * np.outer(v, v.conj())
    return rho


def test_schmidt_golden_values():
    alpha = math.sqrt(2 * math.log(2))  # x = exp(-alpha^2/2) = 1/2
    vec, dims = embed_pure(qutrit_qumode_state(alpha))
    s = schmidt(vec, dims).coefficients
    assert np.allclose(s, [0.76, 0.56, 0.33], atol=5e-3)


def test_schmidt_large_alpha_uniform():
    vec, dims = embed_pure(qutrit_qumode_state(3.0))
    assert np.allclose(schmidt(vec, dims).coefficients, 1 / np.sqrt(3), atol=1e-2)


def test_schmidt_reconstructs_and_orders():
    vec, dims = embed_pure(qutrit_qumode_state(0.9))
    dec = schmidt(vec, dims)
    assert np.allclose(dec.vector(), vec)
    assert np.all(np.diff(dec.coefficients) <= 0)
    assert np.sum(dec.coefficients**2) == pytest.approx(1, abs=1e-10)
    assert np.allclose(schmidt(BELL, (2, 2)).coefficients, [1 / np.sqrt(2)] * 2)
    with pytest.raises(NotNormalized):
        schmidt(2 * BELL, (2, 2))


def test_entropy_limits():
    vec, dims = embed_pure(qutrit_qumode_state(6.0))
    assert entropy_of_entanglement(vec, dims) == pytest.approx(np.log2(3), abs=1e-3)
    assert entropy_of_entanglement(np.kron([1, 0], [0, 1]), (2, 2)) == 0.0
    assert entropy_of_entanglement(BELL, (2, 2)) == pytest.approx(1)


def test_entropy_matches_golden_coefficients():
    alpha = math.sqrt(2 * math.log(2))
    vec, dims = embed_pure(qutrit_qumode_state(alpha))
    golden = np.array([0.76, 0.56, 0.33]) ** 2
    golden /= golden.sum()
    assert entropy_of_entanglement(vec, dims) == pytest.approx(-np.sum(golden * np.log2(golden)), abs=2e-2)


def test_entropy_local_unitary_invariance():
    vec, dims = embed_pure(qutrit_qumode_state(0.8))
    e0 = entropy_of_entanglement(vec, dims)
    for seed in range(3):
        u = np.kron(unitary_group.rvs(3, random_state=seed), unitary_group.rvs(3, random_state=seed + 10))
        assert entropy_of_entanglement(u @ vec, dims) == pytest.approx(e0, abs=1e-9)


def test_entropy_matches_fock_reduced_state():
    state = qutrit_qumode_state(0.8)
    space = fock.TruncatedFockSpace(40)
    rho = fock_density(state, space)
    red = fock.partial_trace(DensityMatrix(rho, (3, space.dim)), [0]).eigenvalues()
    red = red[red > 1e-15]
    vec, dims = embed_pure(state)
    assert entropy_of_entanglement(vec, dims) == pytest.approx(-np.sum(red * np.log2(red)), abs=1e-9)


def test_mixed_state_embedding_shape():
    rho = embed_state(mixed_qubit_qumode_state(0.5, 1.0))
    assert rho.dims == (2, 3)
    assert rho.entries.shape == (6, 6)


def test_embedding_matches_fock_projection():
    space = fock.TruncatedFockSpace(40)
    for p, alpha in ((0.5, 1.0), (0.2, 0.7), (1.0, 1.4)):
        state = mixed_qubit_qumode_state(p, alpha)
        emb = embed_state(state)
        refs = state.qumode_refs()
        proj = project_to_span(fock_density(state, space), [r.fock_vector(space) for r in refs])
        # isometric images of the same operator share their spectrum and negativity
        assert np.allclose(np.linalg.eigvalsh(proj), np.linalg.eigvalsh(emb.entries), atol=1e-9)
        ref = DensityMatrix((proj + proj.conj().T) / 2, emb.dims)
        assert log_negativity(emb) == pytest.approx(log_negativity(ref), abs=1e-9)


def test_embedding_preserves_overlaps():
    state = qutrit_qumode_state(0.6)
    vec, dims = embed_pure(state)
    space = fock.TruncatedFockSpace(40)
    direct = np.concatenate([t.coeff * t.qumode.fock_vector(space) for t in state.components[0].terms])
    # reduced DV states coincide
    a = fock.partial_trace(pure_density(vec, dims), [0]).entries
    b = fock.partial_trace(DensityMatrix(np.outer(direct, direct.conj()), (3, space.dim)), [0]).entries
    assert np.allclose(a, b, atol=1e-9)


def test_log_negativity_limits():
    assert log_negativity(embed_state(mixed_qubit_qumode_state(0.0, 6.0))) == pytest.approx(1, abs=1e-6)
    sep = DensityMatrix(np.diag([0.1, 0.2, 0.3, 0.4]).astype(complex), (2, 2))
    assert log_negativity(sep) == 0.0
    assert log_negativity(pure_density(BELL, (2, 2))) == pytest.approx(1)


def test_log_negativity_fig_point_and_shape():
    e_half = log_negativity(embed_state(mixed_qubit_qumode_state(0.5, 1.0)))
    # direct eigenvalue route on the explicit 6x6 matrix
    rho = embed_state(mixed_qubit_qumode_state(0.5, 1.0))
    pt = partial_transpose(rho.entries, rho.dims, 1)
    assert e_half == pytest.approx(np.log2(np.sum(np.abs(np.linalg.eigvalsh(pt)))), abs=1e-12)
    assert e_half > 0
    for alpha in (0.5, 1.0, 2.0):
        vals = [log_negativity(embed_state(mixed_qubit_qumode_state(p, alpha))) for p in (0, 0.25, 0.5, 0.75, 1)]
        assert np.argmin(vals) == 2


def test_log_negativity_local_unitary_invariance():
    rho = embed_state(mixed_qubit_qumode_state(0.3, 0.9))
    e0 = log_negativity(rho)
    u = np.kron(unitary_group.rvs(2, random_state=1), unitary_group.rvs(3, random_state=2))
    rotated = DensityMatrix(u @ rho.entries @ u.conj().T, rho.dims)
    assert log_negativity(rotated) == pytest.approx(e0, abs=1e-10)
    assert log_negativity(rho, cut=1) == pytest.approx(e0, abs=1e-10)
    with pytest.raises(WrongDims):
        log_negativity(DensityMatrix(np.eye(8) / 8, (2, 2, 2)))


def test_truly_hybrid_rejected():
    with pytest.raises(TrulyHybridInput):
        embed_state(thermal_channel_output(1.0, 2 / 3, 0.2))
    with pytest.raises(TrulyHybridInput):
        embed_state(geometric_mixture(0.3, 0.5))


def test_product_state_rank_one():
    rho = embed_state(pure_state(2, [(1.0, 0, Coherent(0.6))]))
    assert rho.purity() == pytest.approx(1)


def test_concurrence_bell_and_dims():
    assert concurrence(pure_density(BELL, (2, 2))) == pytest.approx(1)
    with pytest.raises(WrongDims):
        concurrence(DensityMatrix(np.eye(6) / 6, (2, 3)))
    with pytest.raises(WrongDims):
        concurrence(np.eye(3) / 3)


@pytest.mark.parametrize("alpha", [0.3, 0.7, 1.2])
@pytest.mark.parametrize("eta", [0.3, 0.7, 0.95])
def test_concurrence_closed_form(alpha, eta):
    expected = closed_concurrence(alpha, eta)
    assert concurrence(zero_temp_output(alpha, eta)) == pytest.approx(expected, abs=1e-8)
    assert concurrence(embed_state(thermal_channel_output(alpha, eta, 0.0))) == pytest.approx(expected, abs=1e-8)
    assert zero_temp_concurrence(alpha, eta) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize("alpha, eta", [(0.3, 0.3), (1.0, 2 / 3), (1.2, 0.95)])
def test_concurrence_against_dilation(alpha, eta):
    space = fock.TruncatedFockSpace(40)
    rho = thermal_dilation_output(ChannelParams(alpha, eta, 0.0), space)
    a = np.sqrt(eta) * alpha
    proj = project_to_span(rho, [fock.coherent_vector(a, space), fock.coherent_vector(-a, space)])
    assert np.trace(proj).real == pytest.approx(1, abs=1e-10)
    assert concurrence(proj) == pytest.approx(concurrence(zero_temp_output(alpha, eta)), abs=1e-9)


def test_zero_temp_embedding_matches_matrix():
    alpha, eta = 1.0, 2 / 3
    emb = embed_state(thermal_channel_output(alpha, eta, 0.0))
    assert np.allclose(emb.entries, zero_temp_output(alpha, eta).entries, atol=1e-12)


def test_concurrence_unit_transmissivity():
    for alpha in (0.3, 0.8):
        rho = embed_state(cat_entangled_state(alpha))
        assert concurrence(rho) == pytest.approx(np.sqrt(1 - np.exp(-4 * alpha**2)), abs=1e-10)


def test_tangle_corners_and_identity():
    ghz = tripartite_tangle(0, 0)
    assert ghz.tau_res == 1 and ghz.c2_ab == 0 and ghz.c2_ac == 0
    sep = tripartite_tangle(1, 1)
    assert max(abs(v) for v in (sep.tau_res, sep.c2_ab, sep.c2_ac, sep.c2_bc, sep.c2_total)) == 0
    q = 0.6
    edge = tripartite_tangle(0, q)
    assert edge.c2_ab == pytest.approx(q * q) and edge.tau_res == pytest.approx(1 - q * q)
    assert edge.c2_total == pytest.approx(1)
    for qf, qs in ((0.3, 0.9), (0.5j, 0.2), (0.99, 0.01)):
        t = tripartite_tangle(qf, qs)
        assert abs(t.tau_res - (t.c2_a_bc - t.c2_ab - t.c2_ac)) <= 1e-12
    with pytest.raises(OverlapOutOfRange):
        tripartite_tangle(1.1, 0)
    with pytest.raises(OverlapOutOfRange):
        tripartite_embed(0, -1.01)


def test_tripartite_embed_states():
    ghz = tripartite_embed(0, 0)
    assert np.allclose(ghz, (np.eye(8)[0] + np.eye(8)[7]) / np.sqrt(2))
    prod = tripartite_embed(1, 1)
    assert np.allclose(prod, (np.eye(8)[0] + np.eye(8)[4]) / np.sqrt(2))
    assert np.linalg.norm(tripartite_embed(0.4 + 0.3j, -0.2)) == pytest.approx(1)


def test_tripartite_embed_matches_coherent_gram():
    # phi_{0,1} = |+-b>, psi_{0,1} = |+-c>: orthonormalize each mode separately
    b, c = 0.5, 0.8
    qf, qs = np.exp(-2 * b * b), np.exp(-2 * c * c)
    vec = tripartite_embed(qf, qs)
    brute = tangle_from_state(vec)
    closed = tripartite_tangle(qf, qs)
    for name in ("c2_ab", "c2_ac", "c2_bc", "c2_a_bc", "tau_res", "c2_total"):
        assert getattr(brute, name) == pytest.approx(getattr(closed, name), abs=1e-9)


def test_tangle_brute_force_grid():
    grid = np.linspace(0, 1, 6)
    for qf in grid:
        for qs in grid:
            brute, closed = tangle_from_state(tripartite_embed(qf, qs)), tripartite_tangle(qf, qs)
            assert abs(brute.c2_ab - closed.c2_ab) <= 1e-9
            assert abs(brute.c2_ac - closed.c2_ac) <= 1e-9
            assert abs(brute.c2_bc) <= 1e-9
            assert abs(brute.tau_res - closed.tau_res) <= 1e-9
