"""Objects built from one (even) period: the discriminant and closed forms.

Throughout, ``p`` is the effective period (odd periods are doubled) so that
``z**(p/2)`` is an integer power.  The quantity ``G(z) = z**(p/2) Gamma_+(z)``
is used instead of ``Gamma_+`` wherever possible: it is a root of
``G**2 - Q G + z**p = 0`` with ``Q = z**(p/2) Delta`` a polynomial, so it
stays finite at ``z = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chebyshev import cheb_u
from .errors import DomainError
from .poly import ComplexPoly, LaurentPoly
from .szego import VerblunskyPeriod, eval_quad_at, iterate_polys

BAND_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Discriminant:
    """``Delta``, ``eta(.;+-1)`` and the degree-``p`` polynomials behind them."""

    V: VerblunskyPeriod
    p: int
    delta: LaurentPoly
    Q: ComplexPoly
    phi_p: ComplexPoly
    phi_p_star: ComplexPoly
    psi_p: ComplexPoly
    psi_p_star: ComplexPoly
    eta_plus: ComplexPoly
    eta_minus: ComplexPoly

    @property
    def half(self) -> int:
        return self.p // 2

    @property
    def norm(self) -> float:
        return float(np.max(np.abs(self.delta.coeffs)))

    def eta(self, z, lam=1.0):
        """``lam (phi_p - phi*_p) - psi_p - psi*_p`` at ``z`` (``lam`` may be an array)."""
        return lam * (self.phi_p(z) - self.phi_p_star(z)) - self.psi_p(z) - self.psi_p_star(z)

    def __call__(self, z):
        return self.delta(z)

    def on_circle(self, theta):
        """Real values of ``Delta(exp(i theta))``."""
        return np.real(self.delta.on_circle(theta))

    def W(self, theta):
        """``d/dtheta Delta(exp(i theta))``."""
        return np.real(self.delta.theta_derivative(theta, 1))

    def W_prime(self, theta):
        return np.real(self.delta.theta_derivative(theta, 2))

    def offset_from(self, theta, theta0):
        """``Delta(e^{i theta}) - Delta(e^{i theta0})`` without cancellation in ``e^{ij d} - 1``."""
        theta = np.asarray(theta, dtype=float)
        d = theta - theta0
        ex = np.arange(self.delta.low, self.delta.high + 1)
        phase = np.exp(1j * ex * theta0) * self.delta.coeffs
        jd = np.multiply.outer(d, ex)
        diff = 2j * np.sin(jd / 2) * np.exp(1j * jd / 2)
        return np.real(diff @ phase)

    def G_pm(self, z):
        """``(z^{p/2} Gamma_+, z^{p/2} Gamma_-)``; the first has the larger modulus."""
        z = np.asarray(z, dtype=complex)
        q = self.Q(z)
        root = np.sqrt(q * q / 4 - z ** self.p)
        g1 = q / 2 + root
        g2 = q / 2 - root
        swap = np.abs(g2) > np.abs(g1)
        gp = np.where(swap, g2, g1)
        gm = np.where(swap, g1, g2)
        # recompute the small root from the product to avoid cancellation
        gm = np.where(np.abs(gp) > 0, z ** self.p / np.where(gp == 0, 1, gp), gm)
        return gp, gm


@lru_cache(maxsize=128)
def _discriminant_cached(alphas: tuple, psi_scale: float) -> Discriminant:
    V = VerblunskyPeriod(alphas)
    p = V.effective_p
    q = iterate_polys(V, p, psi_scale=psi_scale)
    phi, phis, psi, psis = q.phi, q.phi_star, q.psi, q.psi_star
    Q = (phi + phis + psi + psis) / 2
    delta = Q.to_laurent(-(p // 2))
    eta_p = (phi - phis) - psi - psis
    eta_m = (phis - phi) - psi - psis
    return Discriminant(V, p, delta, Q, phi, phis, psi, psis, eta_p, eta_m)


def discriminant(V: VerblunskyPeriod, *, psi_scale: float = 1.0) -> Discriminant:
    """Discriminant of ``V`` over its effective (even) period."""
    return _discriminant_cached(V.alphas, float(psi_scale))


def section_values(V: VerblunskyPeriod, s: int, z):
    """``(phi_s, phi*_s, psi_s, psi*_s)`` at ``z``."""
    return eval_quad_at(V, s, z)


GAMMA_RATIO_SWITCH = 1 - 1e-3


def _split_pair(total, product, root):
    """Roots ``e+ = total + root``, ``e- = total - root`` with ``e+ e- = product``.

    The larger one is formed directly, the smaller from the product, so an
    (exactly) vanishing factor is not polluted by cancellation.
    """
    ep = total + root
    em = total - root
    big_p = np.abs(ep) >= np.abs(em)
    safe_p = np.where(ep == 0, 1, ep)
    safe_m = np.where(em == 0, 1, em)
    ep = np.where(big_p, ep, product / safe_m)
    em = np.where(big_p, product / safe_p, em)
    return ep, em


def _kp_values(D: Discriminant, k: int, z: np.ndarray):
    """``phi_{kp}``, ``phi*_{kp}`` at nonzero ``z``.

    Off the bands (``|G-/G+|`` clearly below 1)::

        phi_{kp} = (G+^k e+ - G-^k e-) / (2 (G+ - G-)),   e+- = 2 G+- + eta(z; 1)

    and ``e+ e- = 2 (phi_p - phi*_p)(phi_p - psi_p)`` (by the Wronskian
    identity), with the analogous product ``2 (phi*_p - phi_p)(phi*_p - psi*_p)``
    for ``phi*``.  Near the bands the Chebyshev form is used directly.
    """
    x = D(z) / 2
    zh = z ** D.half
    q = D.Q(z)
    gp, gm = D.G_pm(z)
    off = np.abs(gm) < GAMMA_RATIO_SWITCH * np.abs(gp)
    f = np.empty_like(z)
    fs = np.empty_like(z)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        if np.any(~off):
            zn, xn, zhn = z[~off], x[~off], zh[~off]
            uk = cheb_u(k, xn)
            ukm = cheb_u(k - 1, xn)
            pre = zn ** (k * D.half)
            f[~off] = pre * (uk + D.eta(zn, 1.0) / (2 * zhn) * ukm)
            fs[~off] = pre * (uk + D.eta(zn, -1.0) / (2 * zhn) * ukm)
        if np.any(off):
            zo, qo, gpo, gmo = z[off], q[off], gp[off], gm[off]
            R = gpo - gmo
            a, b = D.phi_p(zo), D.phi_p_star(zo)
            diff_phi_psi = (D.phi_p - D.psi_p)(zo)
            diff_star = (D.phi_p_star - D.psi_p_star)(zo)
            ep, em = _split_pair(qo + D.eta(zo, 1.0), 2 * (a - b) * diff_phi_psi, R)
            f[off] = (gpo ** k * ep - gmo ** k * em) / (2 * R)
            ep, em = _split_pair(qo + D.eta(zo, -1.0), 2 * (b - a) * diff_star, R)
            fs[off] = (gpo ** k * ep - gmo ** k * em) / (2 * R)
    return f, fs


def closed_form_phi(V: VerblunskyPeriod, k: int, s: int, z):
    """``(phi_{kp+s}(z), phi*_{kp+s}(z))`` from the Chebyshev closed form.

    ``p`` is the effective period and ``0 <= s < p``.
    """
    D = discriminant(V)
    p = D.p
    if not 0 <= s < p:
        raise DomainError(f"section index s={s} outside 0..{p - 1}")
    if k < 0:
        raise DomainError("block index k must be non-negative")
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("closed form needs z != 0")
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    f, fs = _kp_values(D, k, z)
    with np.errstate(over="ignore", invalid="ignore"):
        if s:
            a, as_, b, bs = eval_quad_at(V, s, z)
            f, fs = ((a + b) * f + (a - b) * fs) / 2, ((as_ - bs) * f + (as_ + bs) * fs) / 2
    if scalar:
        return complex(f[0]), complex(fs[0])
    return f, fs


def on_band(D: Discriminant, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    near = np.abs(np.abs(z) - 1) <= BAND_TOL
    th = np.angle(z)
    return near & (np.abs(D.on_circle(th)) <= 2 + BAND_TOL)


def gamma_pm(V: VerblunskyPeriod, z):
    """``(Gamma_+, Gamma_-)`` with ``|Gamma_+| >= 1 >= |Gamma_-|``.

    Raises
    ------
    DomainError
        On a band, where the branch is ambiguous, or at ``z = 0``.
    """
    D = discriminant(V)
    z = np.asarray(z, dtype=complex)
    if np.any(on_band(D, z)):
        raise DomainError("Gamma_+- branch is ambiguous on a band")
    if np.any(z == 0):
        raise DomainError("Gamma_+ has a pole at z = 0")
    gp, gm = D.G_pm(z)
    zh = z ** D.half
    out = (gp / zh, gm / zh)
    if z.ndim == 0:
        return complex(out[0]), complex(out[1])
    return out


def szego_asymptotics(V: VerblunskyPeriod, s: int, z):
    """Limits ``j_s(z), l_s(z)`` of ``z^{-kp/2} phi_{kp+s} / Gamma_+^k`` (and of ``phi*``).

    Written with ``G = z^{p/2} Gamma_+``:
    ``j_0 = (2G + eta(z;1)) / (2 (2G - Q))`` and likewise ``l_0`` with ``eta(z;-1)``.
    """
    D = discriminant(V)
    if not 0 <= s < D.p:
        raise DomainError(f"section index s={s} outside 0..{D.p - 1}")
    z = np.asarray(z, dtype=complex)
    if np.any(on_band(D, z)):
        raise DomainError("Szegő asymptotics are only defined off the bands")
    gp, _ = D.G_pm(z)
    den = 2 * (2 * gp - D.Q(z))
    j0 = (2 * gp + D.eta(z, 1.0)) / den
    l0 = (2 * gp + D.eta(z, -1.0)) / den
    if s:
        a, as_, b, bs = eval_quad_at(V, s, z)
        j0, l0 = ((a + b) * j0 + (a - b) * l0) / 2, ((as_ - bs) * j0 + (as_ + bs) * l0) / 2
    if z.ndim == 0:
        return complex(j0), complex(l0)
    return j0, l0
