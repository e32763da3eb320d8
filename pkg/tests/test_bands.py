import math

import numpy as np
import pytest

from periodic_opuc import (
    ArgumentError,
    DomainError,
    RegimeLabel,
    VerblunskyPeriod,
    band_structure,
    classify_point,
    critical_alpha,
    discriminant,
    make_spike_family,
    v_density,
)
from periodic_opuc.bands import v_values

TWO_PI = 2 * math.pi


def test_free_structure():
    bs = band_structure(VerblunskyPeriod((0, 0)))
    assert len(bs.bands) == 1
    assert bs.bands[0][1] - bs.bands[0][0] == pytest.approx(TWO_PI)
    assert np.allclose(sorted(np.mod(bs.closed_gaps, TWO_PI)), [0, math.pi], atol=1e-9)
    assert np.allclose(sorted(np.mod(bs.resonances, TWO_PI)), [0, math.pi], atol=1e-9)


def test_spike_has_p_bands():
    bs = band_structure(make_spike_family(4, critical_alpha(0.25)))
    assert len(bs.bands) == 4
    assert len(bs.edges) == 8


def test_constant_arc():
    V = VerblunskyPeriod((0.5,))
    bs = band_structure(V)
    D = discriminant(V)
    assert len(bs.bands) == 1
    (x, y), = bs.bands
    assert y - x < TWO_PI - 0.1
    assert x == pytest.approx(math.pi / 3, abs=1e-10) and y == pytest.approx(5 * math.pi / 3, abs=1e-10)
    for e in bs.edges:
        assert abs(D.on_circle(e.theta)) == pytest.approx(2, abs=1e-10)


def test_grid_guard():
    with pytest.raises(ArgumentError):
        band_structure(VerblunskyPeriod((0.5,)), grid_size=100)


def test_v_free():
    V = VerblunskyPeriod((0, 0))
    assert v_density(V, math.pi / 2) == pytest.approx(0.5)
    assert v_density(V, 0.0) == pytest.approx(0.5, abs=1e-6)


def test_v_matches_finite_difference():
    V = VerblunskyPeriod((0.3 + 0.2j, -0.4j))
    D = discriminant(V)
    bs = band_structure(V)
    t = 0.5 * (bs.bands[0][0] + bs.bands[0][1])
    h = 1e-5
    W = (D.on_circle(t + h) - D.on_circle(t - h)) / (2 * h)
    ref = abs(W) / (D.p * math.sqrt(4 - D.on_circle(t) ** 2))
    assert v_density(V, t) == pytest.approx(ref, abs=1e-6)


def test_v_in_gap():
    V = VerblunskyPeriod((0.5,))
    with pytest.raises(DomainError):
        v_density(V, 0.2)
    assert math.isnan(v_values(V, np.array([0.2]))[0])


def test_classify():
    free = VerblunskyPeriod((0, 0))
    assert classify_point(free, math.pi / 2) is RegimeLabel.INTERIOR_BULK
    assert classify_point(free, 0.0) is RegimeLabel.CLOSED_GAP
    V = VerblunskyPeriod((0.5,))
    assert classify_point(V, 0.3) is RegimeLabel.OUTSIDE_BANDS
    bs = band_structure(V)
    for e in bs.edges:
        want = RegimeLabel.EDGE_RESONANT if bs.is_resonance(e.theta) else RegimeLabel.EDGE_NON_RESONANT
        assert classify_point(V, e.theta) is want


def test_spike_edge_resonance_pattern():
    bs = band_structure(make_spike_family(4, critical_alpha(0.25)))
    D = discriminant(make_spike_family(4, critical_alpha(0.25)))
    for e in bs.edges:
        z = np.exp(1j * e.theta)
        is_root = abs(D.phi_p(z) - D.phi_p_star(z)) < 1e-8
        assert e.is_resonance == is_root
