import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodic_opuc import ArgumentError, ComplexPoly, LaurentPoly, roots

cplx = st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)


def test_eval_trivial():
    assert abs(ComplexPoly([1, 0, 1])(1j)) < 1e-15
    delta = LaurentPoly([1, 0, 1], -1)
    assert delta(np.exp(1j * np.pi / 3)) == pytest.approx(1.0)


def test_eval_frozen_value():
    # frozen from a naive power sum in 40-digit arithmetic
    assert ComplexPoly([0.2, -0.5j, 3])(0.7 + 0.1j) == pytest.approx(1.69 + 0.07j, abs=1e-14)


def test_star():
    a = 0.3 - 0.4j
    assert np.allclose(ComplexPoly([-np.conj(a), 1]).star(1).coeffs, [1, -a])
    assert np.allclose(ComplexPoly([1]).star(0).coeffs, [1])
    c = [1 + 1j, 2 - 1j, 3j]
    assert np.allclose(ComplexPoly(c).star(2).coeffs, np.conj(c[::-1]))


@given(st.lists(cplx, min_size=1, max_size=6), cplx)
def test_star_on_circle_is_conjugate(coeffs, _):
    P = ComplexPoly(coeffs)
    n = len(coeffs) - 1
    z = np.exp(0.7j)
    assert abs(P.star(n)(z) - z ** n * np.conj(P(z))) <= 1e-12 * (1 + np.sum(np.abs(coeffs)))


def test_roots_trivial():
    assert np.allclose(sorted(roots(ComplexPoly([-1, 0, 1])).real), [-1, 1])
    r = roots(ComplexPoly([1, 0, 1]))
    assert np.allclose(sorted(r.imag), [-1, 1]) and np.allclose(r.real, 0)


def test_roots_recovered(rng):
    known = rng.normal(size=6) + 1j * rng.normal(size=6)
    got = roots(ComplexPoly.from_roots(known))
    for z in known:
        assert np.min(np.abs(got - z)) < 1e-7


def test_roots_rejects_constants():
    with pytest.raises(ArgumentError):
        roots(ComplexPoly([0, 0]))
    with pytest.raises(ArgumentError):
        roots(ComplexPoly([3]))


def test_laurent_arithmetic():
    d = LaurentPoly([1, 0, 1], -1)
    sq = d * d - 2
    z = 1.3 * np.exp(0.2j)
    assert sq(z) == pytest.approx(z ** 2 + z ** -2)
