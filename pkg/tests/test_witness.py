import math

import numpy as np
import pytest

from hybrident import fock
from hybrident.channels import ChannelParams, cat_input_vector, thermal_dilation_output
from hybrident.density import DensityMatrix, pure_density
from hybrident.errors import DimsMismatch, InvalidX, NonRealResult
from hybrident.witness import (
    Method,
    MomentSet,
    WitnessVerdict,
    argmax_threshold,
    moments_from_density,
    optimal_alpha,
    s_closed_thermal,
    s_geometric,
    s_oracle_thermal,
    s_prime_geometric,
    sqrt_weighted_sum,
    sv_determinant,
    threshold_ratio,
    witness_threshold,
)

SPACE = fock.TruncatedFockSpace(40)


def moments(**kw):
    base = dict(one=1, a_dag=0, a_dag_b=0, a=0, a_dag_a=0, a_dag_a_b=0, a_b_dag=0, a_dag_a_b_dag=0, a_dag_a_b_dag_b=0)
    base.update(kw)
    return MomentSet(**base)


def geometric_mixture_density(x, alpha, space, n_terms=80):
    """Truncated explicit mixture of cat-entangled states with weights (1-x) x^(n-1)."""
    rho = np.zeros((2 * space.dim,) * 2, dtype=complex)
    for n in range(1, n_terms + 1):
        v = cat_input_vector(np.sqrt(n) * alpha, space)
        rho += (1 - x) * x ** (n - 1) * np.outer(v, v.conj())
    rho /= np.trace(rho).real
    return DensityMatrix((rho + rho.conj().T) / 2, (2, space.dim))


def test_diagonal_determinant():
    assert sv_determinant(moments(a_dag_a=0.3, a_dag_a_b_dag_b=0.3)) == pytest.approx(0.09)


def test_moment_invariants():
    with pytest.raises(ValueError):
        moments(one=0.5)
    with pytest.raises(ValueError):
        moments(a_dag=0.2, a=0.3)
    with pytest.raises(ValueError):
        moments(a_dag_a=-0.5)


def test_non_real_determinant():
    m = moments(a_dag_a=0.5, a_dag_a_b=0.3, a_dag_a_b_dag=0.3j, a_dag_a_b_dag_b=0.5)
    with pytest.raises(NonRealResult):
        sv_determinant(m)


def test_vacuum_product_moments():
    space = fock.TruncatedFockSpace(5)
    rho = np.zeros((12, 12))
    rho[0, 0] = 1
    m = moments_from_density(DensityMatrix(rho.astype(complex), (2, 6)), space)
    values = [m.a_dag, m.a_dag_b, m.a, m.a_dag_a, m.a_dag_a_b, m.a_b_dag, m.a_dag_a_b_dag, m.a_dag_a_b_dag_b]
    assert m.one == pytest.approx(1)
    assert np.allclose(values, 0)


def test_excited_coherent_product_moments():
    beta = 0.6 - 0.2j
    vec = np.kron([0, 1], fock.coherent_vector(beta, SPACE))
    m = moments_from_density(pure_density(vec, (2, SPACE.dim)), SPACE)
    assert m.a_dag_a == pytest.approx(1)
    assert m.a_dag_a_b == pytest.approx(beta, abs=1e-12)
    assert m.a_dag_a_b_dag_b == pytest.approx(abs(beta) ** 2, abs=1e-12)


def test_moments_dims_error():
    with pytest.raises(DimsMismatch):
        moments_from_density(DensityMatrix(np.eye(9) / 9, (3, 3)))
    with pytest.raises(DimsMismatch):
        moments_from_density(DensityMatrix(np.eye(10) / 10, (2, 5)), fock.TruncatedFockSpace(7))


def test_pure_cat_determinant():
    for alpha in (0.3, 0.7):
        vec = cat_input_vector(alpha, SPACE)
        s = sv_determinant(moments_from_density(pure_density(vec, (2, SPACE.dim))))
        assert s == pytest.approx(-(alpha**2 / 2) * np.exp(-4 * alpha**2), abs=1e-12)
        assert s < 0


def test_oracle_point():
    params = ChannelParams(0.44, 2 / 3, 0.1)
    oracle = s_oracle_thermal(params, SPACE)
    closed = s_closed_thermal(params)
    assert abs(oracle.s_value - closed.s_value) <= 1e-6
    assert oracle.method is Method.FOCK_ORACLE and closed.method is Method.CLOSED_FORM
    assert oracle.params["cutoff"] == 40


def test_closed_form_examples():
    r = s_closed_thermal(ChannelParams(0.0, 0.4, 0.3))
    assert r.s_value == pytest.approx(0.6 * 0.3 / 8)
    assert r.verdict is WitnessVerdict.INCONCLUSIVE
    r = s_closed_thermal(ChannelParams(0.5, 1.0, 0.0))
    assert r.s_value == pytest.approx(-0.125 * np.exp(-1))
    assert r.detected
    assert s_closed_thermal(ChannelParams(0.44, 2 / 3, 0.1)).detected


def test_verdict_tolerance():
    r = s_closed_thermal(ChannelParams(0.5, 1.0, 0.0), verdict_tol=1.0)
    assert not r.detected


def test_global_and_local_phase_invariance():
    rho = thermal_dilation_output(ChannelParams(0.5, 0.6, 0.1), SPACE)
    s0 = sv_determinant(moments_from_density(rho))
    rng = np.random.default_rng(5)
    for phi, chi in rng.uniform(0, 2 * np.pi, size=(3, 2)):
        u = np.kron(np.diag([1, np.exp(1j * chi)]), np.diag(np.exp(1j * phi * np.arange(SPACE.dim))))
        rot = DensityMatrix(u @ rho.entries @ u.conj().T, rho.dims)
        assert sv_determinant(moments_from_density(rot)) == pytest.approx(s0, abs=1e-12)
    vec = np.exp(0.7j) * cat_input_vector(0.5, SPACE)
    assert sv_determinant(moments_from_density(pure_density(vec, (2, SPACE.dim)))) == pytest.approx(
        -(0.125) * np.exp(-1), abs=1e-12
    )


def test_qubit_embedded_in_fock_gives_same_determinant():
    # the qubit treated as a two-level truncation of a bosonic mode
    rho = thermal_dilation_output(ChannelParams(0.44, 2 / 3, 0.1), SPACE)
    s_qubit = sv_determinant(moments_from_density(rho))
    a = fock.destroy(fock.TruncatedFockSpace(2))[:2, :2]
    assert np.array_equal(a, fock.qudit_mode_ops(2).lower)
    assert s_qubit == pytest.approx(s_closed_thermal(ChannelParams(0.44, 2 / 3, 0.1)).s_value, abs=1e-9)


def test_threshold_matches_sign_change():
    for alpha in (0.2, 0.44, 0.9):
        for eta in (0.3, 0.8):
            t = witness_threshold(alpha, eta)
            assert s_closed_thermal(ChannelParams(alpha, eta, 0.999 * t)).detected
            assert not s_closed_thermal(ChannelParams(alpha, eta, 1.001 * t)).detected
            assert t < eta / (1 - eta)
    assert witness_threshold(1e-6, 0.5) < 1e-11
    assert witness_threshold(0.5, 1.0) == math.inf


def test_monotone_in_n_th():
    seen_inconclusive = False
    for n in np.linspace(0, 1, 101):
        det = s_closed_thermal(ChannelParams(0.44, 0.5, n)).detected
        if seen_inconclusive:
            assert not det
        seen_inconclusive |= not det


def test_optimal_alpha():
    a = optimal_alpha()
    assert 0.43 <= a <= 0.45
    t = a * a
    assert 2 * math.exp(4 * t) * (1 - 4 * t) == pytest.approx(1, abs=1e-12)
    h = 1e-5
    deriv = (witness_threshold(a + h, 0.5) - witness_threshold(a - h, 0.5)) / (2 * h)
    assert abs(deriv) < 1e-8
    for eta in (0.1, 0.5, 0.9):
        assert argmax_threshold(eta) == pytest.approx(a, abs=1e-6)


def test_soundness_ratio():
    ts = np.linspace(1e-6, 2, 20001)
    peak = max(threshold_ratio(t) for t in ts)
    assert peak == pytest.approx(threshold_ratio(optimal_alpha() ** 2), abs=1e-8)
    assert peak == pytest.approx(0.232, abs=1e-3)
    assert peak < 1


def test_sqrt_weighted_sum():
    for y in (0.0, 0.1, 0.5, 0.9):
        n = np.arange(1, 5000)
        assert sqrt_weighted_sum(y) == pytest.approx(np.sum(np.sqrt(n) * y**n), abs=1e-11)
    # bounded between sum y^n and sum n y^n
    y = 0.4
    assert y / (1 - y) <= sqrt_weighted_sum(y) <= y / (1 - y) ** 2


def test_geometric_against_explicit_mixture():
    space = fock.TruncatedFockSpace(90)
    for x, alpha in ((0.3, 0.5), (0.1, 0.3), (0.6, 0.2)):
        rho = geometric_mixture_density(x, alpha, space)
        s = sv_determinant(moments_from_density(rho))
        assert s == pytest.approx(s_geometric(x, alpha).s_value, abs=1e-9)


def test_geometric_examples():
    assert s_geometric(0.1, 0.3).detected
    assert not s_geometric(0.5, 0.0).detected
    assert s_prime_geometric(0.3, 0.0).s_value == 0.0
    r = s_prime_geometric(0.05, 0.3)
    assert r.detected and r.method is Method.GEOMETRIC_BOUND
    assert not s_prime_geometric(0.9, 2.0).detected
    with pytest.raises(InvalidX):
        s_geometric(1.0, 0.3)
    with pytest.raises(InvalidX):
        s_prime_geometric(0.0, 0.3)


def test_bound_dominates_on_grid():
    for x in np.linspace(0.02, 0.9, 20):
        for alpha in np.linspace(0.05, 2, 20):
            assert s_prime_geometric(x, alpha).s_value >= s_geometric(x, alpha).s_value - 1e-15


def test_bound_dominates_random():
    rng = np.random.default_rng(9)
    for x, alpha in zip(rng.uniform(0.001, 0.999, 100), rng.uniform(0, 3, 100)):
        assert s_prime_geometric(x, alpha).s_value >= s_geometric(x, alpha).s_value - 1e-15
