"""Christoffel–Darboux kernels and their scaling limits.

The edge kernels use the entire functions ``E_nu(a) = a**(-nu/2) J_nu(sqrt(a))``
(``d/da E_nu = -E_{nu+1} / 2``), in terms of which::

    Jstar_s(a, b) = (E_s(a) E_{s-1}(b) - E_s(b) E_{s-1}(a)) / (2 (a - b))

and on the diagonal ``Jstar_s(a, a) = (1/4) int_0^1 E_s(a x)^2 x^s dx``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import jv, rgamma

from .bands import RegimeLabel, band_structure, classify_point, v_density
from .errors import ArgumentError, DomainError, UnsupportedCaseError
from .periodic import closed_form_phi, discriminant
from .szego import VerblunskyPeriod, eval_quad_at, phi_sequence

DIAGONAL_TOL = 1e-8
SINC_SERIES = 1e-4
TAYLOR_TERMS = 8
SERIES_RADIUS = 25.0


@dataclass(frozen=True)
class KernelValue:
    n: int
    z: complex
    w: complex
    value: complex


# -- CD kernels ---------------------------------------------------------------

def cd_kernel_direct(V: VerblunskyPeriod, n: int, z, w) -> complex:
    """``sum_{j<=n} phi_j(z) conj(phi_j(w))`` summed along the recursion."""
    z, w = complex(z), complex(w)
    f = fs = g = gs = 1 + 0j
    total = 1 + 0j  # j = 0
    for j in range(n):
        a = V.alpha(j)
        rho = math.sqrt(1 - abs(a) ** 2)
        ca = a.conjugate()
        f, fs = (z * f - ca * fs) / rho, (fs - a * z * f) / rho
        g, gs = (w * g - ca * gs) / rho, (gs - a * w * g) / rho
        total += f * g.conjugate()
    return total


def cd_kernel_matrix(V: VerblunskyPeriod, n: int, zs, ws) -> np.ndarray:
    """Kernel values ``K_n(zs[i], ws[j])`` as a matrix (direct summation)."""
    A = phi_sequence(V, n, zs)
    B = phi_sequence(V, n, ws)
    return A.T @ np.conj(B)


def _phi_pair(V: VerblunskyPeriod, m: int, z: complex):
    p = V.effective_p
    k, s = divmod(m, p)
    if z == 0:
        f, fs, _, _ = eval_quad_at(V, m, z)
        return f, fs
    return closed_form_phi(V, k, s, z)


def cd_kernel_fast(V: VerblunskyPeriod, n: int, z, w) -> complex:
    """Christoffel–Darboux formula with ``phi_{n+1}`` from the closed form.

    Falls back to :func:`cd_kernel_direct` when ``|1 - z conj(w)| <= 1e-8``.
    """
    z, w = complex(z), complex(w)
    den = 1 - z * w.conjugate()
    if abs(den) <= DIAGONAL_TOL:
        return cd_kernel_direct(V, n, z, w)
    fz, fsz = _phi_pair(V, n + 1, z)
    fw, fsw = _phi_pair(V, n + 1, w)
    return (fsz * np.conj(fsw) - fz * np.conj(fw)) / den


# -- limit kernels ------------------------------------------------------------

def sinc_kernel(v_theta: float, a, b) -> complex:
    """``exp(i (a - conj b)/2) sinc(v_theta (a - conj b))`` with ``sinc x = sin x / x``."""
    d = complex(a) - complex(b).conjugate()
    x = v_theta * d
    if abs(x) < SINC_SERIES:
        s = 1 - x * x / 6 + x ** 4 / 120
    else:
        s = np.sin(x) / x
    return complex(np.exp(0.5j * d) * s)


def _e_series(nu: float, a: complex, terms: int = 80) -> complex:
    q = -a / 4
    total = 0j
    term = 1 + 0j
    for m in range(terms):
        total += term * rgamma(m + nu + 1)
        term = term * q / (m + 1)
        if abs(term) < 1e-18 * max(abs(total), 1e-300) and m > 4:
            break
    return total * 2.0 ** (-nu)


def e_nu(nu: float, a) -> complex:
    """``a**(-nu/2) J_nu(sqrt(a))`` continued to an entire function of ``a``."""
    a = complex(a)
    if abs(a) <= SERIES_RADIUS:
        return _e_series(nu, a)
    u = np.sqrt(a)
    return complex(jv(nu, u) * u ** (-nu))


def _elementary(s: float, a: complex):
    """``(E_s(a), E_{s-1}(a))`` from the half-integer closed forms."""
    u = np.sqrt(complex(a))
    c = np.sqrt(2 / np.pi)
    sinc_u = 1 - u * u / 6 if abs(u) < 1e-6 else np.sin(u) / u
    if s == 0.5:
        return c * sinc_u, c * np.cos(u)
    # s = -1/2: E_{-1/2} = c cos u, E_{-3/2} = -c (cos u + u sin u)
    return c * np.cos(u), -c * (np.cos(u) + u * np.sin(u))


def _jstar_taylor(s: float, a: complex, b: complex) -> complex:
    m = (a + b) / 2
    h = (a - b) / 2
    A = [(-0.5) ** j * e_nu(s + j, m) for j in range(TAYLOR_TERMS)]
    B = [(-0.5) ** j * e_nu(s - 1 + j, m) for j in range(TAYLOR_TERMS)]
    # N(h) = A(m+h) B(m-h) - A(m-h) B(m+h); odd in h
    total = 0j
    for i in range(TAYLOR_TERMS):
        for j in range(TAYLOR_TERMS):
            if (i + j) % 2 == 0:
                continue
            sign = (-1) ** j - (-1) ** i
            total += sign * A[i] * B[j] * h ** (i + j - 1) / (math.factorial(i) * math.factorial(j))
    # N / (2 (a - b)) = N / (4 h)
    return total / 4


def bessel_jstar(s: float, a, b) -> complex:
    """Edge kernel ``Jstar_s(a, b)`` for ``s = +-1/2``.

    Off the diagonal the elementary form is used, e.g. for ``s = -1/2``::

        (sqrt(a) sin sqrt(a) cos sqrt(b) - sqrt(b) sin sqrt(b) cos sqrt(a)) / (pi (a - b))

    For ``|a - b| < 1e-4 (1 + |a|)`` a Taylor expansion in ``(a - b)/2``
    about the midpoint is used instead, so the result is smooth across the
    diagonal.  ``Jstar_{-1/2}(0, 0) = 1/pi`` and ``Jstar_{1/2}(0, 0) = 1/(3 pi)``.

    Raises
    ------
    UnsupportedCaseError
        If ``s`` is not ``+-1/2``.
    """
    if s not in (0.5, -0.5):
        raise UnsupportedCaseError(f"Jstar is implemented for s = +-1/2 only, got {s}")
    a, b = complex(a), complex(b)
    if abs(a - b) < 1e-4 * (1 + abs(a)):
        return _jstar_taylor(s, a, b)
    ea, ea1 = _elementary(s, a)
    eb, eb1 = _elementary(s, b)
    return complex((ea * eb1 - eb * ea1) / (2 * (a - b)))


def jstar_quadrature(s: float, a, b, nodes: int = 200) -> complex:
    """``(1/4) int_0^1 E_s(ax) E_s(bx) x^s dx`` by Gauss–Legendre in ``x = y^2``."""
    y, wts = np.polynomial.legendre.leggauss(nodes)
    y = (y + 1) / 2
    wts = wts / 2
    x = y * y
    ea = np.array([_elementary(s, complex(a) * xi)[0] for xi in x])
    eb = np.array([_elementary(s, complex(b) * xi)[0] for xi in x])
    # dx = 2 y dy and x^s = y^(2s)
    return complex(0.25 * np.sum(wts * ea * eb * 2 * y ** (2 * s + 1)))


# -- universality -------------------------------------------------------------

def _scaling(label: RegimeLabel, n: int, edge_sign: int = -1) -> float:
    if label in (RegimeLabel.INTERIOR_BULK, RegimeLabel.CLOSED_GAP):
        return 1.0 / n
    return edge_sign / n ** 2


def universality_ratio(V: VerblunskyPeriod, theta: float, a, b, n: int,
                       label: RegimeLabel | None = None, edge_sign: int = -1) -> complex:
    """``K_n(e^{i(theta + a sigma_n)}, e^{i(theta + b sigma_n)}) / K_n(e^{i theta}, e^{i theta})``.

    ``sigma_n = 1/n`` in the bulk and at closed gaps, ``edge_sign/n^2`` at
    band edges (``edge_sign = -1`` is the standard convention).
    """
    return complex(universality_grid(V, theta, [a], [b], n, label, edge_sign)[0, 0])


def universality_grid(V: VerblunskyPeriod, theta: float, a_values, b_values, n: int,
                      label: RegimeLabel | None = None, edge_sign: int = -1) -> np.ndarray:
    """Matrix of ratios over ``a_values x b_values`` (one recursion pass)."""
    if n < 10:
        raise ArgumentError("universality ratios need n >= 10")
    label = label or classify_point(V, theta)
    if label is RegimeLabel.OUTSIDE_BANDS:
        raise DomainError(f"theta={theta:.12g} is outside the bands")
    if edge_sign not in (-1, 1):
        raise ArgumentError("edge_sign must be -1 or +1")
    sig = _scaling(label, n, edge_sign)
    a = np.asarray(a_values, dtype=complex)
    b = np.asarray(b_values, dtype=complex)
    za = np.exp(1j * (theta + a * sig))
    zb = np.exp(1j * (theta + b * sig))
    z0 = np.exp(1j * np.array([theta]))
    K = cd_kernel_matrix(V, n, np.concatenate([za, z0]), np.concatenate([zb, z0]))
    return K[: a.size, : b.size] / K[-1, -1].real


@dataclass(frozen=True)
class LimitKernel:
    """Predicted limit of :func:`universality_ratio` at one point."""

    regime: RegimeLabel
    theta: float
    v_theta: float | None = None
    W: float | None = None
    p: int | None = None
    order: float | None = None
    period_used: int | None = None
    notes: tuple = field(default=())

    edge_sign: int = -1

    def __call__(self, a, b) -> complex:
        if self.order is None:
            return sinc_kernel(self.v_theta, a, b)
        # the kernel was derived for sigma_n = -1/n^2; flipping it flips a, b
        scale = -self.edge_sign * self.W / self.p ** 2
        num = bessel_jstar(self.order, scale * complex(a), scale * np.conj(complex(b)))
        return complex(num / bessel_jstar(self.order, 0, 0))


def limit_kernel(V: VerblunskyPeriod, theta: float, *, experimental_neg_edge: bool = False,
                 label: RegimeLabel | None = None, edge_sign: int = -1) -> LimitKernel:
    """Limit kernel for the regime of ``theta``.

    Edges with ``Delta = -2`` are refused unless ``experimental_neg_edge`` is
    set; then the period is doubled (``Delta_{2p} = Delta_p^2 - 2``), which
    turns the edge into a ``Delta = +2`` edge of the same sequence.
    """
    bs = band_structure(V)
    label = label or classify_point(V, theta, bs=bs)
    if label is RegimeLabel.OUTSIDE_BANDS:
        raise DomainError(f"theta={theta:.12g} is outside the bands")
    if label in (RegimeLabel.INTERIOR_BULK, RegimeLabel.CLOSED_GAP):
        return LimitKernel(label, theta, v_theta=v_density(V, theta, bs))
    edge, _ = bs.nearest_edge(theta)
    order = -0.5 if label is RegimeLabel.EDGE_RESONANT else 0.5
    D = discriminant(V)
    notes = ()
    work = V
    if edge.delta_sign < 0:
        if not experimental_neg_edge:
            raise UnsupportedCaseError(
                f"edge at theta={edge.theta:.12g} has Delta=-2; pass the experimental flag"
            )
        work = V.repeated(2)
        D = discriminant(work)
        notes = ("Delta=-2 edge handled by period doubling",)
    W = float(D.W(edge.theta))
    return LimitKernel(label, theta, W=W, p=D.p, order=order, period_used=D.p, notes=notes,
                       edge_sign=edge_sign)


def predicted_limit(V: VerblunskyPeriod, theta: float, a, b, *,
                    experimental_neg_edge: bool = False, edge_sign: int = -1) -> complex:
    """Predicted universality limit (sinc in the bulk, ``Jstar_{+-1/2}`` at edges)."""
    lim = limit_kernel(V, theta, experimental_neg_edge=experimental_neg_edge, edge_sign=edge_sign)
    return lim(a, b)


@dataclass(frozen=True)
class UniversalityRow:
    n: int
    a: complex
    b: complex
    ratio: complex
    predicted: complex

    @property
    def error(self) -> float:
        return abs(self.ratio - self.predicted)


@dataclass(frozen=True)
class UniversalityReport:
    regime: RegimeLabel
    theta: float
    v_theta: float | None
    W: float | None
    rows: tuple
    max_errors: tuple  # (n, max error) per n
    monotone: bool

    def to_dict(self) -> dict:
        return {
            "regime": self.regime.value,
            "theta": self.theta,
            "V_theta": self.v_theta,
            "W_theta": self.W,
            "max_errors": [[n, e] for n, e in self.max_errors],
            "trend_monotone": self.monotone,
            "rows": [
                {
                    "n": r.n,
                    "a": [r.a.real, r.a.imag],
                    "b": [r.b.real, r.b.imag],
                    "ratio": [r.ratio.real, r.ratio.imag],
                    "predicted": [r.predicted.real, r.predicted.imag],
                    "abs_error": r.error,
                }
                for r in self.rows
            ],
        }


def universality_sweep(V: VerblunskyPeriod, theta: float, a_values, b_values, n_values, *,
                       experimental_neg_edge: bool = False,
                       edge_sign: int = -1) -> UniversalityReport:
    """Ratios against the predicted limit over a grid and several ``n``."""
    lim = limit_kernel(V, theta, experimental_neg_edge=experimental_neg_edge,
                       edge_sign=edge_sign)
    pred = np.array([[lim(a, b) for b in b_values] for a in a_values])
    rows, errs = [], []
    for n in n_values:
        R = universality_grid(V, theta, a_values, b_values, n, lim.regime, edge_sign)
        errs.append((int(n), float(np.max(np.abs(R - pred)))))
        for i, a in enumerate(a_values):
            for j, b in enumerate(b_values):
                rows.append(UniversalityRow(int(n), complex(a), complex(b), complex(R[i, j]),
                                            complex(pred[i, j])))
    e = [x for _, x in errs]
    mono = all(e[i + 1] <= e[i] for i in range(len(e) - 1))
    return UniversalityReport(lim.regime, theta, lim.v_theta, lim.W, tuple(rows), tuple(errs), mono)
