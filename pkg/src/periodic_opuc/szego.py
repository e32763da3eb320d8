"""Szegő recursion for periodic Verblunsky coefficients.

This is the ground-truth engine: every closed form in the package is
checked against the polynomials produced here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ArgumentError
from .poly import ComplexPoly


@dataclass(frozen=True)
class VerblunskyPeriod:
    """One period ``alpha_0 .. alpha_{p-1}`` of a periodic sequence."""

    alphas: tuple

    def __post_init__(self):
        al = tuple(complex(a) for a in self.alphas)
        if not al:
            raise ArgumentError("a period needs at least one coefficient")
        for j, a in enumerate(al):
            if not np.isfinite(a) or abs(a) >= 1:
                raise ArgumentError(f"|alpha_{j}| = {abs(a):.6g} must be < 1 (index {j})")
        object.__setattr__(self, "alphas", al)

    @property
    def p(self) -> int:
        return len(self.alphas)

    @property
    def effective_p(self) -> int:
        return self.p if self.p % 2 == 0 else 2 * self.p

    @property
    def effective_alphas(self) -> tuple:
        return self.alphas * (self.effective_p // self.p)

    @property
    def rhos(self) -> np.ndarray:
        return np.sqrt(1 - np.abs(np.array(self.alphas)) ** 2)

    @property
    def r(self) -> float:
        """``prod sqrt(1-|alpha_j|^2)`` over one period."""
        return float(np.prod(self.rhos))

    @property
    def r_effective(self) -> float:
        return self.r ** (self.effective_p // self.p)

    def alpha(self, n: int) -> complex:
        return self.alphas[n % self.p]

    def repeated(self, m: int) -> "VerblunskyPeriod":
        """The same sequence viewed with period ``m * p``."""
        return VerblunskyPeriod(self.alphas * m)

    def is_free(self) -> bool:
        return all(a == 0 for a in self.alphas)

    @classmethod
    def from_pairs(cls, pairs) -> "VerblunskyPeriod":
        al = []
        for j, pr in enumerate(pairs):
            if not isinstance(pr, (list, tuple)) or len(pr) != 2:
                raise ArgumentError(f"coefficient {j} must be a [re, im] pair, got {pr!r}")
            try:
                al.append(complex(float(pr[0]), float(pr[1])))
            except (TypeError, ValueError):
                raise ArgumentError(f"coefficient {j} is not numeric: {pr!r}") from None
        return cls(tuple(al))

    @classmethod
    def from_json(cls, text: str) -> "VerblunskyPeriod":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ArgumentError(f"malformed alphas JSON: {exc}") from None
        if not isinstance(data, list):
            raise ArgumentError("alphas JSON must be an array of [re, im] pairs")
        return cls.from_pairs(data)

    def to_pairs(self) -> list:
        return [[a.real, a.imag] for a in self.alphas]

    def to_json(self) -> str:
        return json.dumps(self.to_pairs())


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    """``[[z, -conj(alpha)], [-alpha z, 1]]`` evaluated at one point."""

    z: complex
    alpha: complex

    @property
    def matrix(self) -> np.ndarray:
        a = self.alpha
        return np.array([[self.z, -np.conj(a)], [-a * self.z, 1.0]], dtype=complex)

    @property
    def det(self) -> complex:
        return self.z * (1 - abs(self.alpha) ** 2)


@dataclass(frozen=True, eq=False)
class PolyQuad:
    """Monic and orthonormal first/second kind polynomials of degree ``n``."""

    n: int
    Phi: ComplexPoly
    Phi_star: ComplexPoly
    Psi: ComplexPoly
    Psi_star: ComplexPoly
    kappa: float

    @property
    def phi(self):
        return self.Phi * self.kappa

    @property
    def phi_star(self):
        return self.Phi_star * self.kappa

    @property
    def psi(self):
        return self.Psi * self.kappa

    @property
    def psi_star(self):
        return self.Psi_star * self.kappa


def _step(P, Ps, a):
    n = P.size
    P1 = np.zeros(n + 1, dtype=complex)
    Ps1 = np.zeros(n + 1, dtype=complex)
    P1[1:] += P
    P1[:n] -= np.conj(a) * Ps
    Ps1[:n] += Ps
    Ps1[1:] -= a * P
    return P1, Ps1


@lru_cache(maxsize=256)
def _iterate_cached(alphas: tuple, n: int, psi_scale: float) -> PolyQuad:
    P = Ps = Q = Qs = np.ones(1, dtype=complex)
    kappa = 1.0
    p = len(alphas)
    for j in range(n):
        a = alphas[j % p]
        P, Ps = _step(P, Ps, a)
        Q, Qs = _step(Q, Qs, -a)
        kappa /= np.sqrt(1 - abs(a) ** 2)
    if psi_scale != 1.0:
        Q, Qs = Q * psi_scale, Qs * psi_scale
    return PolyQuad(n, ComplexPoly(P), ComplexPoly(Ps), ComplexPoly(Q), ComplexPoly(Qs), kappa)


def iterate_polys(V: VerblunskyPeriod, n: int, *, psi_scale: float = 1.0) -> PolyQuad:
    """Coefficients of ``Phi_n, Phi*_n, Psi_n, Psi*_n`` and ``kappa_n``.

    ``Psi`` runs the recursion with ``-alpha``.  The orthonormal versions
    (``phi = kappa * Phi`` etc.) share ``kappa_n = prod_{j<n} rho_j^{-1}``.
    ``psi_scale`` exists only to inject a wrong second-kind normalization in
    negative tests.
    """
    if n < 0:
        raise ArgumentError("degree must be non-negative")
    return _iterate_cached(V.alphas, int(n), float(psi_scale))


def eval_quad_at(V: VerblunskyPeriod, n: int, z, *, monic: bool = False):
    """Pointwise ``(phi_n, phi*_n, psi_n, psi*_n)`` at ``z`` in O(n).

    Applies the transfer matrices to ``(1, 1)`` directly; broadcasts over
    array ``z``.
    """
    z = np.asarray(z, dtype=complex)
    f = np.ones_like(z)
    fs = np.ones_like(z)
    g = np.ones_like(z)
    gs = np.ones_like(z)
    for j in range(n):
        a = V.alpha(j)
        ca = np.conj(a)
        f, fs = z * f - ca * fs, fs - a * z * f
        g, gs = z * g + ca * gs, gs + a * z * g
        if not monic:
            rho = np.sqrt(1 - abs(a) ** 2)
            f, fs, g, gs = f / rho, fs / rho, g / rho, gs / rho
    out = (f, fs, g, gs)
    if z.ndim == 0:
        return tuple(complex(v) for v in out)
    return out


def phi_sequence(V: VerblunskyPeriod, n: int, z):
    """Rows ``phi_0(z) .. phi_n(z)`` (orthonormal) as an ``(n+1, len(z))`` array."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty((n + 1, z.size), dtype=complex)
    f = np.ones_like(z)
    fs = np.ones_like(z)
    out[0] = f
    for j in range(n):
        a = V.alpha(j)
        rho = np.sqrt(1 - abs(a) ** 2)
        f, fs = (z * f - np.conj(a) * fs) / rho, (fs - a * z * f) / rho
        out[j + 1] = f
    return out
