"""Normalized band-measure CDF ``k(theta)`` and the singular-point solver.

A singular point of section ``s`` is a band point where

    rho(theta) = |2 exp(-i pi p k(theta)) + eta(e^{i theta}; psi_s / phi_s)|

vanishes.  ``k`` is forced to run from 0 at ``x_1`` to 1 at the end of the
last band, so ``exp(-i pi p k)`` winds ``p/2`` times around the circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .bands import BandStructure, angle_dist, band_structure, v_values, wrap
from .errors import ArgumentError, DomainError, NumericError
from .periodic import discriminant
from .reports import angle
from .szego import VerblunskyPeriod, eval_quad_at

ACCEPT = 1e-6
NEAR_MISS = 1e-3
HIT_TOL = 1e-7
_SUB_NODES = 8


@dataclass(frozen=True, eq=False)
class BandCdf:
    """Normalized CDF of the band measure.

    ``theta``/``k`` hold samples on the Gauss–Legendre grid of each band;
    calling the object evaluates ``k`` anywhere (constant across gaps).
    """

    V: VerblunskyPeriod = field(repr=False)
    structure: BandStructure = field(repr=False)
    nodes: int
    band_mass: tuple  # raw mass per band
    total_raw: float
    theta: np.ndarray = field(default=None, repr=False)
    k: np.ndarray = field(default=None, repr=False)

    @property
    def bands(self) -> tuple:
        return self.structure.bands

    def __call__(self, theta) -> np.ndarray:
        th = np.atleast_1d(np.asarray(theta, dtype=float))
        x1 = self.bands[0][0]
        t = x1 + np.mod(th - x1, 2 * math.pi)
        start = np.concatenate([[0.0], np.cumsum(self.band_mass)]) / self.total_raw
        out = np.zeros_like(t)
        for j, (x, y) in enumerate(self.bands):
            out[t > y] = start[j + 1]
            inside = (t >= x) & (t <= y)
            if np.any(inside):
                part = _partial_mass(self.V, self.structure, x, y, t[inside], self.nodes)
                out[inside] = start[j] + part / self.total_raw
        return np.clip(out, 0.0, 1.0)


def _u_of_theta(x, y, t):
    """Arcsine variable of ``t`` in ``[x, y]``, measured from the nearer end.

    ``arcsin`` near ``+-1`` would turn a rounding error in ``t`` into an
    ``O(sqrt(eps))`` error in ``u``.
    """
    h = (y - x) / 2
    t = np.asarray(t, dtype=float)
    lo = np.clip((t - x) / (2 * h), 0.0, 1.0)
    hi = np.clip((y - t) / (2 * h), 0.0, 1.0)
    return np.where(lo <= hi, -math.pi / 2 + 2 * np.arcsin(np.sqrt(lo)),
                    math.pi / 2 - 2 * np.arcsin(np.sqrt(hi)))


def _integrand(V, bs, x, y, u):
    m, h = (x + y) / 2, (y - x) / 2
    th = m + h * np.sin(u)
    vals = v_values(V, th, bs) * h * np.cos(u) / (2 * math.pi)
    bad = ~np.isfinite(vals)
    if np.any(bad):
        # a node rounded onto an open edge: use the finite limit of V h cos(u)
        D = discriminant(V)
        edge = np.where(th[bad] < m, x, y)
        vals[bad] = np.sqrt(np.abs(D.W(edge)) * h / 2) / (D.p * 2 * math.pi)
    return vals


def _mass_between(V, bs, x, y, ua, ub, nodes):
    """``int V dtheta / 2pi`` between arcsine variables ``ua`` and ``ub`` (arrays)."""
    g, w = np.polynomial.legendre.leggauss(nodes)
    ua, ub = np.broadcast_arrays(np.asarray(ua, dtype=float), np.asarray(ub, dtype=float))
    half = (ub - ua) / 2
    us = ua[..., None] + half[..., None] * (g + 1)
    # a (near) zero-length interval at an open edge would sample V = inf;
    # the u-integrand is bounded, so such an interval carries no mass
    tiny = np.abs(half) < 1e-12
    us = np.where(tiny[..., None], 0.0, us)
    vals = _integrand(V, bs, x, y, us.ravel()).reshape(us.shape)
    return np.where(tiny, 0.0, (vals @ w) * half)


def _partial_mass(V, bs, x, y, t, nodes):
    """``int_x^t V dtheta / 2pi`` for an array of ``t`` in ``[x, y]``."""
    return _mass_between(V, bs, x, y, -math.pi / 2, _u_of_theta(x, y, np.asarray(t)), nodes)


def band_cdf(V: VerblunskyPeriod, quad_points_per_band: int = 512,
             bs: BandStructure | None = None) -> BandCdf:
    """Integrate ``V(theta) dtheta / 2pi`` band by band and normalize to total 1.

    The substitution ``theta = m + h sin(u)`` removes the inverse square-root
    singularity at open band edges, leaving a smooth integrand in ``u``.
    """
    if quad_points_per_band < 64:
        raise ArgumentError("quad_points_per_band must be >= 64")
    bs = bs or band_structure(V)
    g, w = np.polynomial.legendre.leggauss(quad_points_per_band)
    u = g * math.pi / 2
    thetas, masses = [], []
    for j, (x, y) in enumerate(bs.bands):
        vals = _integrand(V, bs, x, y, u)
        if not np.all(np.isfinite(vals)):
            raise NumericError(f"non-finite CDF integrand in band {j}")
        masses.append(float(np.sum(vals * w) * math.pi / 2))
        m, h = (x + y) / 2, (y - x) / 2
        thetas.append(m + h * np.sin(u))
    total = float(sum(masses))
    if not total > 0:
        raise NumericError("band measure has zero mass")
    cdf = BandCdf(V, bs, quad_points_per_band, tuple(masses), total)
    theta = np.concatenate(thetas)
    k = cdf(theta)
    theta.setflags(write=False)
    k.setflags(write=False)
    object.__setattr__(cdf, "theta", theta)
    object.__setattr__(cdf, "k", k)
    return cdf


@dataclass(frozen=True)
class SingularPoint:
    theta: float
    s: int
    residual: float
    band: int
    kind: str = "singular"  # "singular" | "near-miss" | "edge-hit"


@dataclass(frozen=True)
class SingularScan:
    s: int
    points: tuple
    near_misses: tuple
    edge_hits: tuple


def is_spike_family(V: VerblunskyPeriod) -> bool:
    return all(a == 0 for a in V.alphas[:-1])


def _lambda(V: VerblunskyPeriod, s: int, z):
    if s == 0 or is_spike_family(V):
        return np.ones_like(z)
    f, _, g, _ = eval_quad_at(V, s, z)
    bad = np.abs(f) < 1e-12
    if np.any(bad):
        t = float(np.angle(np.asarray(z)[bad][0]))
        raise DomainError(f"phi_{s} vanishes at theta={wrap(t):.12g}")
    return g / f


def _rho_terms(V, D, s, th, k):
    z = np.exp(1j * th)
    return 2 * np.exp(-1j * math.pi * D.p * k) + D.eta(z, _lambda(V, s, z))


def _scan_band(V, D, cdf, j, s, scan_size):
    """Local minima of ``rho`` in band ``j`` as ``(theta, rho)`` pairs."""
    x, y = cdf.bands[j]
    m, h = (x + y) / 2, (y - x) / 2
    start = float(np.sum(cdf.band_mass[:j])) / cdf.total_raw
    u = np.linspace(-math.pi / 2, math.pi / 2, scan_size)
    steps = _mass_between(cdf.V, cdf.structure, x, y, u[:-1], u[1:], _SUB_NODES)
    k = start + np.concatenate([[0.0], np.cumsum(steps)]) / cdf.total_raw
    r = np.abs(_rho_terms(V, D, s, m + h * np.sin(u), k))

    def k_at(v, i0):
        extra = _mass_between(cdf.V, cdf.structure, x, y, u[i0], v, _SUB_NODES)
        return k[i0] + float(extra) / cdf.total_raw

    def rho_at(v, i0):
        th = m + h * math.sin(v)
        return abs(complex(_rho_terms(V, D, s, np.array([th]), np.array([k_at(v, i0)]))[0]))

    found = []
    for i in range(scan_size):
        left = r[i - 1] if i > 0 else math.inf
        right = r[i + 1] if i < scan_size - 1 else math.inf
        if not (r[i] <= left and r[i] <= right) or r[i] >= 10 * NEAR_MISS:
            continue
        lo, hi = u[max(i - 1, 0)], u[min(i + 1, scan_size - 1)]
        i0 = max(i - 1, 0)
        obj = lambda v: rho_at(v, i0) ** 2  # noqa: E731  (smooth near a simple zero)
        if 0 < i < scan_size - 1 and r[i] < left and r[i] < right:
            res = minimize_scalar(obj, bracket=(lo, u[i], hi), method="golden",
                                  options={"xtol": 1e-12})
        else:
            res = minimize_scalar(obj, bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-13})
        v = float(np.clip(res.x, lo, hi))
        found.append((m + h * math.sin(v), rho_at(v, i0)))
    return found


def find_singular_points(V: VerblunskyPeriod, s: int, scan_size: int = 2048,
                         quad_points_per_band: int = 512,
                         cdf: BandCdf | None = None) -> SingularScan:
    """Zeros of ``rho`` inside the bands for section ``s``.

    Each band is scanned on ``scan_size`` points (uniform in the arcsine
    variable), local minima are refined, and those with ``rho < 1e-6`` are
    returned.  Minima with ``1e-6 <= rho < 1e-3`` are kept as near misses;
    minima at band ends or closed gaps are reported as edge hits.
    """
    D = discriminant(V)
    if not 0 <= s < D.p:
        raise ArgumentError(f"section index s={s} outside 0..{D.p - 1}")
    bs = band_structure(V)
    cdf = cdf or band_cdf(V, quad_points_per_band, bs)
    pts, near, hits = [], [], []
    ends = [e.theta for e in bs.edges] + list(bs.closed_gaps)
    if not bs.edges:
        ends.append(0.0)
    for j in range(len(cdf.bands)):
        for theta, res in _scan_band(V, D, cdf, j, s, scan_size):
            wt = float(wrap(theta))
            at_end = bool(ends) and float(np.min(angle_dist(wt, np.array(ends)))) < HIT_TOL
            if res < ACCEPT and at_end:
                kind = "edge-hit"
            elif res < ACCEPT:
                kind = "singular"
            elif res < NEAR_MISS:
                kind = "near-miss"
            else:
                continue
            sp = SingularPoint(angle(wt), s, res, j, kind)
            target = {"singular": pts, "near-miss": near, "edge-hit": hits}[kind]
            if all(angle_dist(sp.theta, q.theta) > 1e-9 for q in target):
                target.append(sp)
    return SingularScan(s, tuple(sorted(pts, key=lambda q: q.theta)), tuple(near), tuple(hits))


def make_spike_family(p: int, alpha: complex) -> VerblunskyPeriod:
    """Period ``{0, ..., 0, alpha}`` of even length ``p``."""
    if p < 2 or p % 2:
        raise ArgumentError(f"spike family needs an even period, got p={p}")
    if abs(alpha) >= 1:
        raise ArgumentError(f"|alpha| = {abs(alpha):.6g} must be < 1")
    return VerblunskyPeriod((0j,) * (p - 1) + (complex(alpha),))


def critical_alpha(c: float) -> complex:
    """``-c + i sqrt(c - c^2)``, which satisfies ``Re alpha = -|alpha|^2``."""
    if not 0 < c < 1:
        raise ArgumentError("c must lie in (0, 1)")
    return complex(-c, math.sqrt(c - c * c))
