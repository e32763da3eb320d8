"""Band/gap structure on the unit circle and point classification."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .errors import ArgumentError, DomainError
from .periodic import Discriminant, discriminant
from .poly import roots
from .szego import VerblunskyPeriod

TWO_PI = 2 * math.pi
TOUCH_TOL = 1e-9
RESONANCE_MATCH = 1e-6
RESONANCE_RADIUS_TOL = 1e-6
EDGE_MATCH = 1e-6
CLOSED_GAP_EXT = 1e-9
DEFAULT_GRID = 16384


class RegimeLabel(str, enum.Enum):
    INTERIOR_BULK = "InteriorBulk"
    EDGE_NON_RESONANT = "EdgeNonResonant"
    EDGE_RESONANT = "EdgeResonant"
    CLOSED_GAP = "ClosedGap"
    OUTSIDE_BANDS = "OutsideBands"


def wrap(theta):
    return np.mod(theta, TWO_PI)


def angle_dist(a, b):
    d = np.mod(np.asarray(a) - np.asarray(b) + math.pi, TWO_PI) - math.pi
    return np.abs(d)


@dataclass(frozen=True)
class Edge:
    theta: float
    delta_sign: int  # +2 or -2, stored as +1 / -1 multiplier of 2
    is_resonance: bool
    side: str  # "left" (band starts) or "right" (band ends)
    W: float
    warning: str | None = None

    @property
    def delta_value(self) -> int:
        return 2 * self.delta_sign


@dataclass(frozen=True)
class BandStructure:
    """Bands ``[x_j, y_j]`` with ``0 <= x_1 < y_1 < ... < y_q < x_1 + 2 pi``."""

    p: int
    bands: tuple
    edges: tuple
    closed_gaps: tuple
    closed_gap_signs: tuple
    resonances: tuple
    resonance_radii: tuple
    warnings: tuple = field(default=())

    @property
    def x1(self) -> float:
        return self.bands[0][0] if self.bands else 0.0

    def band_index(self, theta: float) -> int | None:
        t = self.x1 + float(np.mod(theta - self.x1, TWO_PI))
        for j, (x, y) in enumerate(self.bands):
            if x - 1e-14 <= t <= y + 1e-14:
                return j
        return None

    def nearest_edge(self, theta: float):
        if not self.edges:
            return None, math.inf
        d = [float(angle_dist(theta, e.theta)) for e in self.edges]
        j = int(np.argmin(d))
        return self.edges[j], d[j]

    def nearest_closed_gap(self, theta: float):
        if not self.closed_gaps:
            return None, math.inf
        d = angle_dist(theta, np.array(self.closed_gaps))
        j = int(np.argmin(d))
        return j, float(d[j])

    def is_resonance(self, theta: float, tol: float = RESONANCE_MATCH) -> bool:
        if not self.resonances:
            return False
        return bool(np.min(angle_dist(theta, np.array(self.resonances))) < tol)


def _critical_points(D: Discriminant, grid: np.ndarray) -> np.ndarray:
    w = D.W(grid)
    pts = []
    n = grid.size
    for i in range(n):
        a, b = grid[i], grid[(i + 1) % n] + (TWO_PI if i == n - 1 else 0.0)
        wa, wb = w[i], w[(i + 1) % n]
        if wa == 0:
            pts.append(a)
        elif wa * wb < 0:
            pts.append(brentq(D.W, a, b, xtol=1e-15, rtol=1e-15, maxiter=200))
    pts = np.sort(wrap(np.array(pts)))
    if pts.size > 1:
        keep = np.concatenate([[True], np.diff(pts) > 1e-12])
        pts = pts[keep]
        if pts.size > 1 and pts[0] + TWO_PI - pts[-1] <= 1e-12:
            pts = pts[:-1]
    return pts


def _level_crossings(D: Discriminant, crit: np.ndarray, level: float):
    """Roots of ``Delta - level`` between consecutive critical points (monotone pieces)."""
    out = []
    if crit.size == 0:
        return out
    vals = D.on_circle(crit) - level
    vals = np.where(np.abs(vals) <= TOUCH_TOL, 0.0, vals)
    m = crit.size
    f = lambda t: float(D.on_circle(t)) - level  # noqa: E731
    for i in range(m):
        a = crit[i]
        b = crit[(i + 1) % m] + (TWO_PI if i == m - 1 else 0.0)
        if vals[i] * vals[(i + 1) % m] < 0:
            out.append(float(wrap(brentq(f, a, b, xtol=1e-14, rtol=1e-15, maxiter=300))))
    return out


@lru_cache(maxsize=64)
def _band_structure_cached(alphas: tuple, grid_size: int) -> BandStructure:
    V = VerblunskyPeriod(alphas)
    D = discriminant(V)
    p = D.p
    grid = np.linspace(0.0, TWO_PI, grid_size, endpoint=False)
    crit = _critical_points(D, grid)
    notes = []

    closed, closed_signs = [], []
    if crit.size:
        cv = D.on_circle(crit)
        for t, v in zip(crit, cv):
            for sgn in (1, -1):
                if abs(v - 2 * sgn) <= TOUCH_TOL:
                    closed.append(float(t))
                    closed_signs.append(sgn)

    # resonances: zeros of phi_p - phi*_p on the circle
    diff = (D.phi_p - D.phi_p_star).trimmed()
    res, radii = [], []
    if diff.degree >= 1:
        for zr in roots(diff):
            radii.append(float(abs(zr)))
            if abs(abs(zr) - 1) <= RESONANCE_RADIUS_TOL:
                res.append(float(wrap(np.angle(zr))))
    res_arr = np.array(sorted(res))

    def is_res(t):
        return bool(res_arr.size and np.min(angle_dist(t, res_arr)) < RESONANCE_MATCH)

    edges = []
    for sgn in (1, -1):
        for t in _level_crossings(D, crit, 2.0 * sgn):
            w = float(D.W(t))
            # inside the band |Delta| decreases away from the edge
            side = "left" if w * sgn < 0 else "right"
            warn = None
            if abs(w) <= 1e-6 * D.norm:
                warn = "near-degenerate touch: |W| tiny at edge"
                notes.append(f"edge at {t:.12g}: {warn}")
            edges.append(Edge(t, sgn, is_res(t), side, w, warn))
    edges.sort(key=lambda e: e.theta)

    bands = []
    if edges:
        lefts = [e for e in edges if e.side == "left"]
        rights = [e for e in edges if e.side == "right"]
        if len(lefts) != len(rights):
            raise DomainError("unbalanced band edges; increase grid_size")
        ordered = sorted(edges, key=lambda e: e.theta)
        start = next(i for i, e in enumerate(ordered) if e.side == "left")
        ordered = ordered[start:] + ordered[:start]
        for i in range(0, len(ordered), 2):
            lo, hi = ordered[i], ordered[i + 1]
            if lo.side != "left" or hi.side != "right":
                raise DomainError("band edges do not alternate; increase grid_size")
            x = lo.theta
            y = hi.theta if hi.theta > x else hi.theta + TWO_PI
            bands.append((x, y))
        bands.sort()
    else:
        if np.all(np.abs(D.on_circle(grid)) <= 2 + TOUCH_TOL):
            bands.append((0.0, TWO_PI))
        else:
            raise DomainError("no band edges found but |Delta| > 2 somewhere")

    for t in closed:
        if not is_res(t):
            notes.append(f"closed gap at {t:.12g} does not match a resonance")
    order = np.argsort(closed)
    return BandStructure(
        p=p,
        bands=tuple(bands),
        edges=tuple(edges),
        closed_gaps=tuple(closed[i] for i in order),
        closed_gap_signs=tuple(closed_signs[i] for i in order),
        resonances=tuple(res_arr.tolist()),
        resonance_radii=tuple(radii),
        warnings=tuple(notes),
    )


def band_structure(V: VerblunskyPeriod, grid_size: int = DEFAULT_GRID) -> BandStructure:
    """Bands, edges, closed gaps and resonances of ``V``.

    Critical points of ``theta -> Delta(e^{i theta})`` are located by a sign
    scan of ``W`` on ``grid_size`` points refined with Brent's method; between
    consecutive critical points ``Delta`` is monotone, so every crossing of
    ``+-2`` is bracketed there.  A critical point with ``|Delta| = 2``
    (within ``1e-9``) is a closed gap.
    """
    if grid_size < 4096:
        raise ArgumentError("grid_size must be at least 4096")
    bs = _band_structure_cached(V.alphas, int(grid_size))
    for note in bs.warnings:
        warnings.warn(note, RuntimeWarning, stacklevel=2)
    return bs


def _one_minus_abs_delta_sq(D: Discriminant, bs: BandStructure, theta: np.ndarray):
    """``4 - Delta^2``, computed relative to the nearest ``|Delta| = 2`` point when close to one.

    Near edges and closed gaps the direct difference loses all digits.
    """
    delta = D.on_circle(theta)
    four = 4 - delta * delta
    anchors = [(t, sg) for t, sg in zip(bs.closed_gaps, bs.closed_gap_signs)]
    anchors += [(e.theta, e.delta_sign) for e in bs.edges]
    if anchors:
        at = np.array([a[0] for a in anchors])
        d = angle_dist(theta[:, None], at[None, :])
        j = np.argmin(d, axis=1)
        near = d[np.arange(theta.size), j] < 1e-2
        if np.any(near):
            for g in np.unique(j[near]):
                sel = near & (j == g)
                off = D.offset_from(theta[sel], at[g])
                sg = anchors[g][1]
                # Delta = 2 sg + off  =>  4 - Delta^2 = -off (4 sg + off)
                four[sel] = -off * (4 * sg + off)
    return delta, four


def v_values(V: VerblunskyPeriod, theta, bs: BandStructure | None = None):
    """Vectorized band density; ``inf`` at open band edges, ``nan`` in gaps."""
    D = discriminant(V)
    bs = bs or band_structure(V)
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    delta, four = _one_minus_abs_delta_sq(D, bs, theta)
    w = np.abs(D.W(theta))
    with np.errstate(divide="ignore", invalid="ignore"):
        v = w / (D.p * np.sqrt(four))
    out = np.where(four > 0, v, np.nan)
    if bs.closed_gaps:
        cg = np.array(bs.closed_gaps)
        d = angle_dist(theta[:, None], cg[None, :])
        j = np.argmin(d, axis=1)
        at = d[np.arange(theta.size), j] <= CLOSED_GAP_EXT
        if np.any(at):
            ext = np.sqrt(np.abs(D.W_prime(cg[j[at]])) / 2) / D.p
            out[at] = ext
    for e in bs.edges:
        out[angle_dist(theta, e.theta) <= 1e-15] = np.inf
    return out


def v_density(V: VerblunskyPeriod, theta: float, bs: BandStructure | None = None) -> float:
    """Density ``V(theta) = |W| / (p sqrt(4 - Delta^2))`` of the band measure.

    At a closed gap the continuous extension ``sqrt(|W'|/2)/p`` is returned;
    at an open band edge the value is ``inf``.

    Raises
    ------
    DomainError
        If ``e^{i theta}`` lies in a gap.
    """
    val = float(v_values(V, [theta], bs)[0])
    if math.isnan(val):
        raise DomainError(f"theta={theta:.12g} lies in a gap")
    return val


def classify_point(V: VerblunskyPeriod, theta: float, tol: float = 1e-9,
                   bs: BandStructure | None = None) -> RegimeLabel:
    """Regime of ``e^{i theta}`` for the universality limits."""
    D = discriminant(V)
    bs = bs or band_structure(V)
    _, dcg = bs.nearest_closed_gap(theta)
    if dcg < EDGE_MATCH:
        return RegimeLabel.CLOSED_GAP
    edge, de = bs.nearest_edge(theta)
    if edge is not None and de < EDGE_MATCH:
        return RegimeLabel.EDGE_RESONANT if edge.is_resonance else RegimeLabel.EDGE_NON_RESONANT
    a = abs(float(D.on_circle(theta)))
    if a < 2 - tol:
        return RegimeLabel.INTERIOR_BULK
    if a <= 2 + tol and edge is not None:
        # between the matching window and the tolerance band: closest structure wins
        return RegimeLabel.EDGE_RESONANT if edge.is_resonance else RegimeLabel.EDGE_NON_RESONANT
    return RegimeLabel.OUTSIDE_BANDS
