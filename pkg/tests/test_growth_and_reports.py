import json
import math

import numpy as np
import pytest

from periodic_opuc import VerblunskyPeriod, band_structure, critical_alpha, make_spike_family
from periodic_opuc.reports import angle, arc, dumps_json, to_jsonable
from periodic_opuc.szego import phi_sequence
from periodic_opuc.verify import verify


def _no_growth(values):
    q = len(values) // 4
    return max(values[-q:]) <= 2 * max(values[:q])


def _phi_kp(V, theta, step, ks):
    p = V.effective_p
    out = []
    for k in ks:
        z = np.exp(1j * (theta + step(k * p)))
        out.append(abs(phi_sequence(V, k * p, [z])[-1, 0]))
    return np.array(out), p


@pytest.mark.parametrize("c", [-2.0, 0.5, 3.0])
def test_bounded_in_bulk(c):
    V = VerblunskyPeriod((0.3 + 0.2j, -0.4j))
    bs = band_structure(V)
    theta = 0.5 * sum(bs.bands[0])
    assert not bs.is_resonance(theta)
    vals, _ = _phi_kp(V, theta, lambda n: c / n, range(1, 201, 5))
    assert _no_growth(vals)


@pytest.mark.parametrize("c", [-2.0, 1.0])
def test_linear_at_nonresonant_edge(c):
    V = VerblunskyPeriod((0.5,))
    edge = band_structure(V).edges[0]
    assert not edge.is_resonance
    ks = np.arange(1, 201, 5)
    vals, p = _phi_kp(V, edge.theta, lambda n: c / n ** 2, ks)
    assert _no_growth(vals / (ks * p))


def test_bounded_at_resonances():
    S = make_spike_family(4, critical_alpha(0.25))
    bs = band_structure(S)
    for t in bs.resonances:
        vals, _ = _phi_kp(S, t, lambda n: 1.5 / n ** 2, range(1, 201, 5))
        assert _no_growth(vals)


def test_angle_and_arc():
    assert angle(-1e-14) == 0.0
    assert angle(2 * math.pi + 0.5) == pytest.approx(0.5)
    assert arc(0.0, 2 * math.pi) == [0.0, pytest.approx(2 * math.pi)]
    assert arc(-0.5, 0.5)[0] == pytest.approx(2 * math.pi - 0.5)


def test_jsonable():
    obj = {"z": 1 + 2j, "x": np.float64(np.inf), "arr": np.array([1.0, np.nan])}
    assert to_jsonable(obj) == {"z": [1.0, 2.0], "x": "inf", "arr": [1.0, "nan"]}
    json.loads(dumps_json({"a": to_jsonable(obj)}))


def test_verify_api_deterministic():
    a = verify(seed=7, trials=2).to_dict()
    b = verify(seed=7, trials=2).to_dict()
    assert a == b and a["passed"]
