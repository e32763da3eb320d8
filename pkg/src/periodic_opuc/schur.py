"""Wall polynomials, Schur and Carathéodory functions, and related identities.

Everything here is expressed through one period of data (``phi_p``,
``psi_p`` and their reversals) and is cross-checked in the test-suite
against the Szegő recursion.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .chebyshev import cheb_u
from .errors import ConsistencyError, DomainError, NumericError, PropertyViolation
from .periodic import discriminant, szego_asymptotics
from .poly import ComplexPoly, chebyshev_u_laurent, roots
from .szego import VerblunskyPeriod, eval_quad_at, iterate_polys

WALL_RESIDUAL = 1e-10


@dataclass(frozen=True, eq=False)
class WallPair:
    k: int
    A: ComplexPoly
    B: ComplexPoly


def wall_polys(V: VerblunskyPeriod, k: int, *, psi_scale: float = 1.0) -> WallPair:
    """``A_{kp-1}`` and ``B_{kp-1}`` assembled from Laurent coefficients.

    Negative powers must cancel exactly; a residual above ``1e-10`` (relative
    to the largest coefficient of ``B``) raises
    :class:`ConsistencyError` (this is what catches a wrong second-kind
    normalization, see ``psi_scale``).
    """
    if k < 1:
        raise DomainError("wall_polys needs k >= 1")
    D = discriminant(V, psi_scale=psi_scale)
    p, h = D.p, D.half
    rk = V.r_effective ** k
    u_k = chebyshev_u_laurent(k, D.delta)
    u_km1 = chebyshev_u_laurent(k - 1, D.delta)
    diff_star = (D.psi_p_star - D.phi_p_star).to_laurent()
    A = (u_km1 * diff_star).shift((k - 1) * h - 1) * (rk / 2)
    B = (u_k - (u_km1 * (D.psi_p + D.phi_p).to_laurent()).shift(-h) / 2).shift(k * h) * rk
    scale = max(1.0, float(np.max(np.abs(B.coeffs))))
    try:
        Ap = A.to_poly(WALL_RESIDUAL * scale)
        Bp = B.to_poly(WALL_RESIDUAL * scale)
    except DomainError as exc:
        raise ConsistencyError(f"Wall polynomials do not reduce to polynomials: {exc}") from None
    n = k * p - 1
    return WallPair(k, _fit(Ap, n, scale), _fit(Bp, n, scale))


def _fit(P: ComplexPoly, n: int, scale: float = 1.0) -> ComplexPoly:
    c = np.zeros(n + 1, dtype=complex)
    m = min(n + 1, P.coeffs.size)
    c[:m] = P.coeffs[:m]
    if np.any(np.abs(P.coeffs[m:]) > WALL_RESIDUAL * scale):
        raise ConsistencyError(f"Wall polynomial exceeds degree {n}")
    return ComplexPoly(c)


def wall_from_recursion(V: VerblunskyPeriod, n: int) -> WallPair:
    """``A_n = (Psi*_{n+1} - Phi*_{n+1}) / (2z)``, ``B_n = (Psi*_{n+1} + Phi*_{n+1}) / 2``."""
    q = iterate_polys(V, n + 1)
    num = (q.Psi_star - q.Phi_star).coeffs
    if abs(num[0]) > 1e-12:
        raise ConsistencyError("Psi* - Phi* has a nonzero constant term")
    A = ComplexPoly(num[1:] / 2)
    B = (q.Psi_star + q.Phi_star) / 2
    return WallPair(-1, _fit(A, n), _fit(B, n))


def _check_disk(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("Schur and Carathéodory functions need |z| < 1")
    return z


def _finish(val, z):
    if not np.all(np.isfinite(val)):
        raise NumericError("vanishing denominator (pole) inside the disk")
    return complex(val) if z.ndim == 0 else val


def schur_f(V: VerblunskyPeriod, z):
    """Schur function ``f = lim A_{kp-1} / B_{kp-1}``.

    Written as ``[(psi*_p - phi*_p)/z] / (2 G - psi_p - phi_p)`` with
    ``G = z^{p/2} Gamma_+``; the numerator's constant term cancels exactly
    and is dropped, so ``z = 0`` is allowed.
    """
    z = _check_disk(z)
    D = discriminant(V)
    num = ComplexPoly((D.psi_p_star - D.phi_p_star).coeffs[1:])
    gp, _ = D.G_pm(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = num(z) / (2 * gp - D.psi_p(z) - D.phi_p(z))
    return _finish(val, z)


def caratheodory_F(V: VerblunskyPeriod, z):
    """``F = 1 + 2 (psi*_p - phi*_p) / (2 G + phi*_p - phi_p - psi_p - psi*_p)``."""
    z = _check_disk(z)
    D = discriminant(V)
    gp, _ = D.G_pm(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        den = 2 * gp + D.phi_p_star(z) - D.phi_p(z) - D.psi_p(z) - D.psi_p_star(z)
        val = 1 + 2 * (D.psi_p_star(z) - D.phi_p_star(z)) / den
    return _finish(val, z)


# -- generating function -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GenFuncParts:
    """``g(z,t)``, ``nu(z,t;lam)`` and the denominator ``D(z,t)``."""

    V: VerblunskyPeriod

    def _sections(self, z):
        p = self.V.effective_p
        phis = np.array([eval_quad_at(self.V, s, z)[0] for s in range(p)])
        psis = np.array([eval_quad_at(self.V, s, z)[2] for s in range(p)])
        return phis, psis

    def nu(self, z, t, lam):
        phis, psis = self._sections(complex(z))
        tp = complex(t) ** np.arange(phis.size)
        return complex(np.sum(tp * (phis + lam * psis)))

    def g(self, z, t):
        z, t = complex(z), complex(t)
        D = discriminant(self.V)
        phis, psis = self._sections(z)
        tp = t ** np.arange(phis.size)
        return complex((D.phi_p(z) - D.phi_p_star(z)) * np.sum(tp * psis)
                       - (D.psi_p(z) + D.psi_p_star(z)) * np.sum(tp * phis))

    def denominator(self, z, t):
        z, t = complex(z), complex(t)
        D = discriminant(self.V)
        p = D.p
        return 2 * (1 - D.Q(z) * t ** p + z ** p * t ** (2 * p))

    def value(self, z, t):
        p = discriminant(self.V).p
        return (2 * self.nu(z, t, 0.0) + complex(t) ** p * self.g(z, t)) / self.denominator(z, t)


def generating_guard(V: VerblunskyPeriod, z, t) -> float:
    """``|t|^p |G_+(z)|``; the series converges when this is below 1."""
    D = discriminant(V)
    gp, _ = D.G_pm(complex(z))
    return float(abs(t) ** D.p * abs(gp))


def generating_function_residual(V: VerblunskyPeriod, z, t, N: int) -> float:
    """``|sum_{n<=N} phi_n(z) t^n - (2 nu(z,t;0) + t^p g(z,t)) / D(z,t)|``."""
    z, t = complex(z), complex(t)
    if z == 0:
        raise DomainError("generating function check needs z != 0")
    if generating_guard(V, z, t) >= 0.9:
        raise DomainError("|t|^p |G_+(z)| >= 0.9: outside the convergence guard")
    f, fs = 1 + 0j, 1 + 0j
    total, tn = 1 + 0j, 1 + 0j
    for j in range(N):
        a = V.alpha(j)
        rho = np.sqrt(1 - abs(a) ** 2)
        f, fs = (z * f - a.conjugate() * fs) / rho, (fs - a * z * f) / rho
        tn *= t
        total += f * tn
    return float(abs(total - GenFuncParts(V).value(z, t)))


# -- Chebyshev identity across periods -----------------------------------------

def cheb_period_identity(V: VerblunskyPeriod, m: int, k: int, z):
    """Both sides of the identity linking period ``mp`` at index ``k`` to period ``p`` at ``mk``.

    ``U_k(x_mp) + eta_mp(z;1)/(2 z^{mp/2}) U_{k-1}(x_mp)`` versus
    ``U_mk(x_p) + eta_p(z;1)/(2 z^{p/2}) U_{mk-1}(x_p)``, ``x_j = Delta_j(z)/2``,
    where ``p`` is the effective period.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("identity needs z != 0")
    if m < 1 or k < 1:
        raise DomainError("m and k must be positive")
    base = VerblunskyPeriod(V.effective_alphas)

    def side(W, kk):
        # point values from the recursion are better conditioned than Horner
        # on large-coefficient polynomials near the circle
        f, fs, g, gs = eval_quad_at(W, W.p, z)
        zh = z ** (W.p // 2)
        x = (f + fs + g + gs) / (4 * zh)
        eta = (f - fs) - g - gs
        return complex(cheb_u(kk, x) + eta / (2 * zh) * cheb_u(kk - 1, x))

    return side(base.repeated(m), k), side(base, m * k)


def cheb_period_identity_residual(V: VerblunskyPeriod, m: int, k: int, z) -> float:
    lhs, rhs = cheb_period_identity(V, m, k, z)
    return abs(lhs - rhs)


# -- zeros of Phi_kp - Phi*_kp ---------------------------------------------------

class ZeroLabel(str, enum.Enum):
    RESONANCE = "Resonance"
    CHEB_PREIMAGE = "ChebPreimage"
    BOTH = "Both"
    NEITHER = "Neither"


@dataclass(frozen=True)
class ClassifiedZero:
    z: complex
    label: ZeroLabel
    resonance_residual: float
    cheb_residual: float


def classify_zeros_phi_diff(V: VerblunskyPeriod, k: int, tol: float = 1e-6) -> tuple:
    """Label the zeros of ``Phi_kp - Phi*_kp`` (``p`` the actual period).

    A zero is a resonance when ``|Phi_p - Phi*_p|`` is small there and a
    Chebyshev preimage when ``|U_{k-1}(Delta/2)|`` is small; both tests use
    ``tol`` times a scale (coefficient size, resp. ``k^2``).  The parity of
    ``U_{k-1}`` makes the branch of ``z^{p/2}`` irrelevant for odd ``p``.

    Raises
    ------
    PropertyViolation
        If some zero is neither.
    """
    p = V.p
    if k < 1 or k > 8 or p > 6:
        raise DomainError("classification is limited to 1 <= k <= 8 and p <= 6")
    qk = iterate_polys(V, k * p)
    q1 = iterate_polys(V, p)
    diff_k = qk.Phi - qk.Phi_star
    diff_1 = q1.Phi - q1.Phi_star
    Qp = (q1.phi + q1.phi_star + q1.psi + q1.psi_star) / 2
    res_scale = float(np.max(np.abs(diff_1.coeffs)))
    cheb_scale = max(1.0, float(k * k))
    out = []
    for zr in roots(diff_k):
        rr = abs(diff_1(zr)) / res_scale
        x = Qp(zr) / (2 * zr ** (p / 2))
        cr = abs(cheb_u(k - 1, x)) / cheb_scale
        is_r, is_c = rr <= tol, cr <= tol
        label = (ZeroLabel.BOTH if is_r and is_c else ZeroLabel.RESONANCE if is_r
                 else ZeroLabel.CHEB_PREIMAGE if is_c else ZeroLabel.NEITHER)
        out.append(ClassifiedZero(complex(zr), label, float(rr), float(cr)))
        if label is ZeroLabel.NEITHER:
            raise PropertyViolation(f"zero {complex(zr)} is neither a resonance nor a preimage",
                                    case={"alphas": V.to_pairs(), "k": k, "root": [zr.real, zr.imag]})
    return tuple(out)


# -- ratio asymptotics -----------------------------------------------------------

def ratio_asymptotic(V: VerblunskyPeriod, s: int, z) -> complex:
    """``lim_k phi_{kp+s}(z) / phi_{kp+s+1}(z)`` off the bands.

    ``j_s / j_{s+1}`` for ``s < p-1`` and ``j_{p-1} / (z^{p/2} Gamma_+ j_0)``
    for ``s = p-1``.

    Raises
    ------
    NumericError
        If the denominator limit ``j_{s+1}`` vanishes (a singular point).
    """
    D = discriminant(V)
    p = D.p
    if not 0 <= s < p:
        raise DomainError(f"section index s={s} outside 0..{p - 1}")
    z = complex(z)
    js, _ = szego_asymptotics(V, s, z)
    if s < p - 1:
        den, _ = szego_asymptotics(V, s + 1, z)
    else:
        j0, _ = szego_asymptotics(V, 0, z)
        gp, _ = D.G_pm(z)
        den = complex(gp) * j0
    if abs(den) < 1e-300:
        raise NumericError(f"j_{(s + 1) % p} vanishes at z={z}: singular ratio")
    return js / den


def direct_ratio(V: VerblunskyPeriod, s: int, k: int, z) -> complex:
    """``phi_{kp+s}(z) / phi_{kp+s+1}(z)`` from the recursion."""
    n = k * V.effective_p + s
    a = eval_quad_at(V, n, z)[0]
    b = eval_quad_at(V, n + 1, z)[0]
    return a / b


__all__ = [
    "ClassifiedZero", "GenFuncParts", "WallPair", "ZeroLabel",
    "caratheodory_F", "cheb_period_identity", "cheb_period_identity_residual",
    "classify_zeros_phi_diff", "direct_ratio", "generating_function_residual",
    "generating_guard", "wall_from_recursion", "ratio_asymptotic", "schur_f", "wall_polys",
]
