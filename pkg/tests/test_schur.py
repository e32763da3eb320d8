import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodic_opuc import (
    ConsistencyError,
    DomainError,
    PropertyViolation,
    VerblunskyPeriod,
    caratheodory_F,
    cheb_period_identity_residual,
    classify_zeros_phi_diff,
    critical_alpha,
    generating_function_residual,
    make_spike_family,
    ratio_asymptotic,
    schur_f,
    wall_polys,
)
from periodic_opuc.periodic import discriminant
from periodic_opuc.schur import ZeroLabel, cheb_period_identity, direct_ratio, wall_from_recursion
from periodic_opuc.verify import random_period

FREE = VerblunskyPeriod((0, 0))


def test_wall_free():
    for k in (1, 3, 6):
        W = wall_polys(FREE, k)
        assert np.allclose(W.A.coeffs, 0) and np.allclose(W.B.coeffs, np.eye(1, 2 * k)[0])


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_wall_vs_recursion(rng, p):
    V = random_period(rng, p, radius=0.5)
    for k in range(1, 11):
        W = wall_polys(V, k)
        P = wall_from_recursion(V, k * V.effective_p - 1)
        assert np.allclose(W.A.coeffs, P.A.coeffs, atol=1e-9)
        assert np.allclose(W.B.coeffs, P.B.coeffs, atol=1e-9)


def test_wall_wrong_normalization_detected(rng):
    with pytest.raises(ConsistencyError):
        wall_polys(random_period(rng, 4), 2, psi_scale=1.01)


def test_schur_basic():
    assert np.allclose(schur_f(FREE, np.array([0, 0.5j, -0.7])), 0)
    assert schur_f(VerblunskyPeriod((0.5,)), 0) == pytest.approx(0.5)
    # the first Schur parameter is alpha_0 itself
    assert schur_f(VerblunskyPeriod((0.5j, 0.1)), 0) == pytest.approx(0.5j)
    with pytest.raises(DomainError):
        schur_f(FREE, 1.0)


def test_schur_matches_wall_ratio(rng):
    V = random_period(rng, 4, radius=0.5)
    z = 0.3 * np.exp(1j)
    W = wall_polys(V, 80)
    assert schur_f(V, z) == pytest.approx(W.A(z) / W.B(z), abs=1e-6)


def test_caratheodory_basic(rng):
    assert np.allclose(caratheodory_F(FREE, np.array([0, 0.3, 0.8j])), 1)
    for _ in range(5):
        assert caratheodory_F(random_period(rng, 3), 0) == pytest.approx(1)


@given(st.integers(0, 10_000))
def test_schur_caratheodory_relation(seed):
    rng = np.random.default_rng(seed)
    V = random_period(rng, int(rng.integers(1, 5)), radius=0.8)
    z = 0.9 * np.sqrt(rng.uniform(size=8)) * np.exp(2j * np.pi * rng.uniform(size=8))
    f = schur_f(V, z)
    F = caratheodory_F(V, z)
    assert np.all(np.abs(f) < 1) and np.all(F.real > 0)
    assert np.allclose(F, (1 + z * f) / (1 - z * f), atol=1e-8)


def test_generating_function():
    assert generating_function_residual(FREE, 0.8 * np.exp(1j), 0.3, 60) <= 1e-10
    assert generating_function_residual(FREE, np.exp(1j), 0, 10) == 0
    with pytest.raises(DomainError):
        generating_function_residual(FREE, 3.0, 0.9, 60)


def test_cheb_identity_free():
    for m in (2, 3):
        for k in (1, 7, 20):
            z = 1.3 * np.exp(0.4j)
            lhs, _ = cheb_period_identity(FREE, m, k, z)
            assert cheb_period_identity_residual(FREE, m, k, z) <= 1e-12 * max(abs(lhs), 1)


def test_classify_free_k2():
    zs = classify_zeros_phi_diff(FREE, 2)
    by_root = {round(c.z.real) + 1j * round(c.z.imag): c.label for c in zs}
    assert by_root[1] is ZeroLabel.RESONANCE and by_root[-1] is ZeroLabel.RESONANCE
    assert by_root[1j] is ZeroLabel.CHEB_PREIMAGE and by_root[-1j] is ZeroLabel.CHEB_PREIMAGE


def test_classify_k1_only_resonances(rng):
    V = random_period(rng, 4)
    assert all(c.label is ZeroLabel.RESONANCE for c in classify_zeros_phi_diff(V, 1))


def test_classify_spike():
    zs = classify_zeros_phi_diff(make_spike_family(4, critical_alpha(0.25)), 3)
    assert len(zs) == 12 and all(c.label is not ZeroLabel.NEITHER for c in zs)


def test_classify_flags_neither(monkeypatch):
    import periodic_opuc.schur as schur

    monkeypatch.setattr(schur, "cheb_u", lambda n, x: 1.0)
    V = random_period(np.random.default_rng(3), 2)
    with pytest.raises(PropertyViolation):
        schur.classify_zeros_phi_diff(V, 3)


def test_ratio_free():
    assert ratio_asymptotic(FREE, 0, 1.5) == pytest.approx(1 / 1.5)


def test_ratio_vs_direct(rng):
    V = random_period(rng, 4)
    for s in range(4):
        assert ratio_asymptotic(V, s, 1.5) == pytest.approx(direct_ratio(V, s, 60, 1.5), abs=1e-6)


def test_ratio_telescopes(rng):
    V = random_period(rng, 4)
    D = discriminant(V)
    z = 1.4 * np.exp(0.3j)
    prod = np.prod([ratio_asymptotic(V, s, z) for s in range(D.p)])
    gp, _ = D.G_pm(z)
    assert prod == pytest.approx(1 / gp, rel=1e-8)
