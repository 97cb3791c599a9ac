import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybrident import fock
from hybrident.errors import DimensionZero, NotPSD, OverlapOutOfRange
from hybrident.gram import GramMatrix, build_gram, inverse_gram_schmidt, numerical_rank
from hybrident.states import Coherent, coherent_overlap, gram_of_refs


def coherent_gram(amps):
    return build_gram(lambda i, j: coherent_overlap(amps[i], amps[j]), len(amps))


def test_coherent_triple_overlaps():
    a = 0.9
    g = coherent_gram([0, a, -a]).entries
    assert np.isclose(g[0, 1], np.exp(-a * a / 2))
    assert np.isclose(g[0, 2], np.exp(-a * a / 2))
    assert np.isclose(g[1, 2], np.exp(-2 * a * a))
    assert np.array_equal(g, g.conj().T)
    assert np.allclose(np.diag(g), 1)


def test_orthonormal_gives_identity():
    basis = np.eye(3)
    g = build_gram(lambda i, j: basis[i] @ basis[j], 3)
    assert np.array_equal(g.entries, np.eye(3))
    emb = inverse_gram_schmidt(g)
    assert np.allclose(emb.coefficients, np.eye(3))
    assert emb.rank == 3


def test_coherent_pair_matches_fock_inner_product():
    rng = np.random.default_rng(4)
    space = fock.TruncatedFockSpace(60)
    for _ in range(5):
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        a, b = 1.2 * a / max(1, abs(a)), 1.2 * b / max(1, abs(b))
        g = coherent_gram([a, b]).entries
        # G[1, 0] = <psi_0|psi_1>
        direct = np.vdot(fock.coherent_vector(a, space), fock.coherent_vector(b, space))
        assert abs(g[1, 0] - direct) < 1e-10
        closed = np.exp(-abs(a) ** 2 / 2 - abs(b) ** 2 / 2 + np.conj(a) * b)
        assert abs(g[1, 0] - closed) < 1e-12


def test_three_state_rows_closed_form():
    c1, c2, c3 = 0.3 + 0.2j, -0.1 + 0.4j, 0.25 - 0.1j
    # overlaps c1 = <1|2>, c2 = <1|3>, c3 = <2|3>; G[i, j] = <j|i>
    g = np.array(
        [[1, np.conj(c1), np.conj(c2)], [c1, 1, np.conj(c3)], [c2, c3, 1]], dtype=complex
    )
    a = inverse_gram_schmidt(GramMatrix(g)).coefficients
    s1 = np.sqrt(1 - abs(c1) ** 2)
    m = (c3 - np.conj(c1) * c2) / s1
    assert np.allclose(a[1, :2], [c1, s1], atol=1e-12)
    assert np.allclose(a[2], [c2, m, np.sqrt(1 - abs(c2) ** 2 - abs(m) ** 2)], atol=1e-12)
    assert np.allclose(a @ a.conj().T, g, atol=1e-12)


def test_vacuum_plus_minus_alpha_rows():
    alpha = 1.1
    x = np.exp(-alpha**2 / 2)
    a = inverse_gram_schmidt(coherent_gram([0, alpha, -alpha])).coefficients
    s = np.sqrt(1 - x**2)
    expected = np.array(
        [[1, 0, 0], [x, s, 0], [x, -x**2 * s, np.sqrt(1 - x**2 - x**4 + x**6)]]
    )
    assert np.allclose(a, expected, atol=1e-12)
    # <alpha|-alpha> recovered from the rows
    assert np.isclose(a[2] @ a[1].conj(), x**4, atol=1e-12)


def test_diagonal_real_nonnegative():
    emb = inverse_gram_schmidt(coherent_gram([0.1, 0.7j, -0.4, 1 + 1j]))
    d = np.diag(emb.coefficients)
    assert np.all(d.imag == 0) and np.all(d.real > 0)


def test_duplicate_deflates():
    g = coherent_gram([0.5, 0.5, -0.5])
    emb = inverse_gram_schmidt(g)
    assert emb.rank == 2
    assert emb.coefficients.shape == (3, 2)
    assert emb.pivots == (0, 2)
    assert np.allclose(emb.reconstruct(), g.entries, atol=1e-12)
    assert numerical_rank(coherent_gram([0.5, 0.5])) == 1


def test_numerical_rank_values():
    assert numerical_rank(GramMatrix(np.eye(3))) == 3
    assert numerical_rank(coherent_gram([0, 1, -1])) == 3


def test_errors():
    with pytest.raises(DimensionZero):
        build_gram(lambda i, j: 1.0, 0)
    with pytest.raises(OverlapOutOfRange):
        build_gram(lambda i, j: 1.0 if i == j else 1.1, 2)
    with pytest.raises(OverlapOutOfRange):
        build_gram(lambda i, j: 0.9, 2)
    bad = np.array([[1, 0.9, 0.9], [0.9, 1, -0.9], [0.9, -0.9, 1]])
    with pytest.raises(NotPSD):
        inverse_gram_schmidt(GramMatrix(bad))


amplitudes = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=60, deadline=None)
@given(st.lists(amplitudes, min_size=2, max_size=8))
def test_reconstruction_property(amps):
    g = coherent_gram(amps)
    emb = inverse_gram_schmidt(g)
    err = np.max(np.abs(emb.reconstruct() - g.entries))
    if emb.rank == len(amps):
        assert err <= 1e-9
    else:
        # a deflated row drops a residual of squared norm <= rank_tol
        assert err <= 2 * np.sqrt(emb.tolerance_used)
    rows = np.sum(np.abs(emb.coefficients) ** 2, axis=1)
    assert np.allclose(rows, 1, atol=emb.tolerance_used)
    assert np.allclose(np.triu(emb.coefficients, 1), 0)


@settings(max_examples=30, deadline=None)
@given(st.lists(amplitudes, min_size=2, max_size=6), st.randoms(use_true_random=False))
def test_rank_invariant_under_reordering(amps, rnd):
    perm = list(range(len(amps)))
    rnd.shuffle(perm)
    g = coherent_gram(amps)
    gp = GramMatrix(g.entries[np.ix_(perm, perm)])
    assert numerical_rank(g) == numerical_rank(gp)


def test_determinant_is_product_of_pivots():
    emb = inverse_gram_schmidt(coherent_gram([0, 0.8, -0.8, 0.8j]))
    a = emb.coefficients
    assert np.isclose(np.linalg.det(a), np.prod(np.diag(a)))
    assert abs(np.prod(np.diag(a))) > 0


def test_gram_of_refs_mixed_kinds():
    refs = [Coherent(0.3), Coherent(-0.3)]
    assert np.isclose(gram_of_refs(refs).entries[1, 0], np.exp(-2 * 0.09))
