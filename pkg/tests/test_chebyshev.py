from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodic_opuc import DomainError, cheb_eval, cheb_u, cheb_u_normalized
from periodic_opuc.chebyshev import (
    cheb_generating_series,
    cheb_u_hyperbolic,
    cheb_u_sum_form,
    cheb_u_trig,
)


def test_known_values():
    assert cheb_u(-1, 0.7) == 0
    assert cheb_u(3, 0.5) == pytest.approx(-1)
    assert cheb_u(4, 0.3) == pytest.approx(0.0496, abs=1e-12)
    assert cheb_u(7, 1) == pytest.approx(8)
    assert cheb_u(2, 1) == pytest.approx(3)
    assert cheb_u(0, 3 + 2j) == 1


def test_eval_reports_method():
    assert cheb_eval(5, 0.2).method == "recurrence"
    assert cheb_eval(200, 0.2).method == "trig"
    assert cheb_eval(200, 2 + 1j).method == "hyperbolic"


@given(st.integers(0, 40), st.floats(-1.5, 1.5), st.floats(-0.5, 0.5))
def test_sum_form_agrees(n, re, im):
    x = complex(re, im)
    ref = cheb_u_sum_form(n, x)
    # the binomial sum cancels; its own error scales with the absolute term sum
    size = sum(comb(n - j, j) * abs(2 * x) ** (n - 2 * j) for j in range(n // 2 + 1))
    assert abs(cheb_u(n, x) - ref) <= 1e-13 * max(1.0, size)


@given(st.integers(65, 400), st.floats(-0.999, 0.999))
def test_branches_agree_on_segment(n, x):
    v = cheb_u(n, x)
    assert abs(v - cheb_u_trig(n, x)) <= 1e-8 * (n + 1)
    assert abs(cheb_u_hyperbolic(n, x + 1e-12j) - v) <= 1e-6 * (n + 1)


def test_endpoint_continuity():
    for n in (100, 500):
        assert cheb_u(n, 1 + 1e-14) == pytest.approx(n + 1, rel=1e-6)
        assert cheb_u(n, -1 - 1e-14j) == pytest.approx((-1) ** n * (n + 1), rel=1e-6)


def test_normalized_pair_large_k():
    x = 1.7 + 0.3j
    uk, ukm = cheb_u_normalized(2000, x)
    assert np.isfinite(uk) and np.isfinite(ukm)
    g = x + np.sqrt(x * x - 1)
    assert uk == pytest.approx(cheb_u(30, x) / g ** 30, rel=1e-6)


def test_generating_series():
    assert cheb_generating_series(0, 0.5, 200) == pytest.approx(0.8)
    assert cheb_generating_series(0.3, 0.2, 60) == pytest.approx(1 / (1 - 0.12 + 0.04), abs=1e-10)
    assert cheb_generating_series(5.0, 0, 10) == 1
    with pytest.raises(DomainError):
        cheb_generating_series(5.0, 0.5, 10)
