import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodic_opuc import (
    DomainError,
    UnsupportedCaseError,
    VerblunskyPeriod,
    bessel_jstar,
    cd_kernel_direct,
    cd_kernel_fast,
    critical_alpha,
    make_spike_family,
    predicted_limit,
    sinc_kernel,
    universality_ratio,
)
from periodic_opuc.bands import band_structure
from periodic_opuc.kernels import jstar_quadrature, limit_kernel, universality_sweep
from periodic_opuc.verify import random_period

small = st.complex_numbers(max_magnitude=20, allow_nan=False, allow_infinity=False)


def test_free_kernel_geometric_sum():
    V = VerblunskyPeriod((0, 0))
    for z, w in [(0.9 * np.exp(0.2j), 1.1 * np.exp(-0.7j)), (2.0, 0.5)]:
        q = z * np.conj(w)
        ref = 11 if abs(q - 1) < 1e-14 else (1 - q ** 11) / (1 - q)
        assert cd_kernel_direct(V, 10, z, w) == pytest.approx(ref)
        assert cd_kernel_fast(V, 10, z, w) == pytest.approx(ref)


def test_diagonal_on_circle(rng):
    V = random_period(rng, 3)
    z = np.exp(0.4j)
    k = cd_kernel_fast(V, 40, z, z)
    assert abs(k.imag) < 1e-10 * abs(k) and k.real >= 1
    assert k == pytest.approx(cd_kernel_direct(V, 40, z, z), rel=1e-12)


@pytest.mark.parametrize("n", [50, 200])
def test_fast_vs_direct(rng, n):
    for _ in range(10):
        V = random_period(rng, int(rng.integers(1, 5)))
        z, w = np.exp(2j * np.pi * rng.uniform(size=2))
        assert cd_kernel_fast(V, n, z, w) == pytest.approx(cd_kernel_direct(V, n, z, w), rel=1e-8)


def test_sinc_values():
    assert sinc_kernel(0.5, 1.3, 1.3) == pytest.approx(1)
    assert sinc_kernel(0.5, 1, 0) == pytest.approx(np.exp(0.5j) * math.sin(0.5) / 0.5)


@given(st.floats(0.05, 2), small, small)
def test_sinc_symmetry(v, a, b):
    assert sinc_kernel(v, a, b) == pytest.approx(np.conj(sinc_kernel(v, b, a)), rel=1e-12, abs=1e-12)


def test_jstar_closed_forms():
    for t in (0.3, 2.0, 17.0):
        r = math.sqrt(t)
        assert bessel_jstar(-0.5, t, t) == pytest.approx((2 + math.sin(2 * r) / r) / (4 * math.pi))
    a, b = 1.7, 5.2
    ra, rb = math.sqrt(a), math.sqrt(b)
    ref = (ra * math.sin(ra) * math.cos(rb) - rb * math.sin(rb) * math.cos(ra)) / (math.pi * (a - b))
    assert bessel_jstar(-0.5, a, b) == pytest.approx(ref)
    assert bessel_jstar(-0.5, 0, 0) == pytest.approx(1 / math.pi)
    assert bessel_jstar(0.5, 0, 0) == pytest.approx(1 / (3 * math.pi))
    with pytest.raises(UnsupportedCaseError):
        bessel_jstar(1.5, 0, 0)


@given(st.sampled_from([0.5, -0.5]), small, small)
def test_jstar_vs_quadrature(s, a, b):
    ref = jstar_quadrature(s, a, b)
    assert abs(bessel_jstar(s, a, b) - ref) <= 1e-9 * max(1.0, abs(ref))


@given(st.floats(-20, 20), st.floats(-20, 20), st.floats(1e-9, 1e-3))
def test_jstar_continuous_across_diagonal(x, y, h):
    a = complex(x, y)
    for s in (0.5, -0.5):
        near = bessel_jstar(s, a + h, a)
        on = bessel_jstar(s, a, a)
        assert abs(near - on) <= 1e-3 * max(1.0, abs(on)) * (1 + abs(a))


def test_ratio_normalized():
    V = VerblunskyPeriod((0.3 + 0.2j, -0.4j))
    bs = band_structure(V)
    th = 0.5 * sum(bs.bands[0])
    assert universality_ratio(V, th, 0, 0, 100) == pytest.approx(1)
    assert universality_ratio(V, th, 1.5, 1.5, 100).imag == pytest.approx(0, abs=1e-12)


def test_free_bulk_limit():
    V = VerblunskyPeriod((0, 0))
    r = universality_ratio(V, math.pi / 2, 1, 0, 2000)
    assert abs(r - np.exp(0.5j) * math.sin(0.5) / 0.5) < 0.01


def test_free_closed_gap_limit():
    V = VerblunskyPeriod((0, 0))
    r = universality_ratio(V, 0.0, 1.2, -0.4, 3000)
    assert abs(r - predicted_limit(V, 0.0, 1.2, -0.4)) < 0.02


def test_edge_limits_normalized():
    V = VerblunskyPeriod((0.5,))
    assert predicted_limit(V, math.pi / 3, 0, 0) == pytest.approx(1)
    with pytest.raises(DomainError):
        predicted_limit(V, 0.2, 0, 0)


def test_negative_edge_refused_then_doubled():
    S = make_spike_family(4, critical_alpha(0.25))
    edge = next(e for e in band_structure(S).edges if e.delta_sign < 0)
    with pytest.raises(UnsupportedCaseError):
        limit_kernel(S, edge.theta)
    lim = limit_kernel(S, edge.theta, experimental_neg_edge=True)
    assert lim.period_used == 8 and lim.notes


def test_spike_edge_trend():
    S = make_spike_family(4, critical_alpha(0.25))
    edge = next(e for e in band_structure(S).edges if e.delta_sign > 0)
    g = np.linspace(-2, 2, 5)
    rep = universality_sweep(S, edge.theta, g, g, [400, 800, 1600])
    assert rep.monotone


def test_edge_sign_plus():
    V = VerblunskyPeriod((0.5,))
    g = np.linspace(-2, 2, 5)
    rep = universality_sweep(V, math.pi / 3, g, g, [400, 1600], edge_sign=1)
    assert rep.max_errors[-1][1] < 0.05
