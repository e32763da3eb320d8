import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodic_opuc import ArgumentError, VerblunskyPeriod, eval_quad_at, iterate_polys
from periodic_opuc.verify import random_period

alpha = st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0, 0.9), st.floats(0, 2 * np.pi))


def test_validation():
    with pytest.raises(ArgumentError):
        VerblunskyPeriod((1.0,))
    with pytest.raises(ArgumentError):
        VerblunskyPeriod(())
    with pytest.raises(ArgumentError):
        VerblunskyPeriod.from_json("[[0, 0], [0.2]]")
    with pytest.raises(ArgumentError):
        VerblunskyPeriod.from_json("{not json")
    V = VerblunskyPeriod.from_json("[[0.1, 0.2]]")
    assert V.alphas == (0.1 + 0.2j,) and V.effective_p == 2
    assert VerblunskyPeriod.from_json(V.to_json()) == V


def test_free_case():
    q = iterate_polys(VerblunskyPeriod((0, 0)), 5)
    assert np.allclose(q.phi.coeffs, [0, 0, 0, 0, 0, 1])
    assert np.allclose(q.phi_star.coeffs, [1, 0, 0, 0, 0, 0])
    assert np.allclose(q.psi.coeffs, q.phi.coeffs)
    assert eval_quad_at(VerblunskyPeriod((0, 0)), 4, 2.0) == (16, 1, 16, 1)


def test_one_step():
    q = iterate_polys(VerblunskyPeriod((0.5,)), 1)
    assert np.allclose(q.Phi.coeffs, [-0.5, 1])
    assert np.allclose(q.Psi.coeffs, [0.5, 1])


def test_frozen_coefficients():
    # transfer-matrix product in 40-digit arithmetic
    ref = [-0.3 + 0.1j, 0.388 - 0.036j, -0.58176 + 0.13152j, 0.6412224 - 0.0514368j,
           -0.736128 + 0.13152j, 0.7032 - 0.036j, -0.66 + 0.1j, 1]
    q = iterate_polys(VerblunskyPeriod((0.3 + 0.1j, -0.2)), 7)
    assert np.allclose(q.Phi.coeffs, ref, atol=1e-14)


def test_frozen_point_values():
    ref = (-5.748727992849049 - 5.197075688633686j, -4.067614312051748 + 6.596361349831083j,
           1.6515546456542944 - 2.019277580687246j, 2.149991148746276 + 1.4773803693568857j)
    V = VerblunskyPeriod((-0.25 + 0.4330127j,))
    got = eval_quad_at(V, 6, np.exp(1j))
    assert np.allclose(got, ref, atol=1e-12)
    assert eval_quad_at(V, 0, 0.3) == (1, 1, 1, 1)


@given(st.lists(alpha, min_size=1, max_size=4), st.integers(0, 30),
       st.floats(0.3, 2.0), st.floats(0, 2 * np.pi))
def test_wronskian(al, n, r, t):
    V = VerblunskyPeriod(tuple(al))
    z = r * np.exp(1j * t)
    f, fs, g, gs = eval_quad_at(V, n, z)
    scale = max(abs(gs * f), abs(g * fs), 1.0)
    assert abs(gs * f + g * fs - 2 * z ** n) <= 1e-10 * scale


def test_pointwise_matches_coefficients(rng):
    V = random_period(rng, 3)
    q = iterate_polys(V, 17)
    z = 0.8 * np.exp(2.1j)
    vals = eval_quad_at(V, 17, z)
    for poly, v in zip((q.phi, q.phi_star, q.psi, q.psi_star), vals):
        assert poly(z) == pytest.approx(v, rel=1e-12)
