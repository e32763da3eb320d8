"""Chebyshev polynomials of the second kind for complex arguments.

Three representations are used, each inside the region where it is well
conditioned:

* the three-term recurrence ``U_{k+1} = 2x U_k - U_{k-1}`` (small ``n``),
* ``U_n(cos t) = sin((n+1)t) / sin t`` close to the real segment ``[-1, 1]``,
* ``(g**(n+1) - g**-(n+1)) / (g - 1/g)`` with ``g = x + sqrt(x**2 - 1)``,
  ``|g| >= 1``, everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import ArgumentError, DomainError

RECURRENCE_MAX_N = 64
SEGMENT_TOL = 1e-8
ENDPOINT_TOL = 1e-6


@dataclass(frozen=True)
class ChebEval:
    n: int
    x: complex
    value: complex
    method: str  # "recurrence" | "trig" | "hyperbolic"


def joukowski_root(x):
    """``x + sqrt(x**2 - 1)`` on the branch with modulus >= 1."""
    x = np.asarray(x, dtype=complex)
    g = x + np.sqrt(x - 1) * np.sqrt(x + 1)
    # the product of principal roots already lands outside the disk; guard
    # against rounding on the cut
    flip = np.abs(g) < 1
    return np.where(flip, 1 / np.where(g == 0, 1, g), g)


def _recurrence(n, x):
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    for _ in range(n):
        prev, cur = cur, 2 * x * cur - prev
    return cur


def _trig(n, x):
    t = np.arccos(x)
    return np.sin((n + 1) * t) / np.sin(t)


def _near_endpoint(n, x):
    # U_n(-x) = (-1)^n U_n(x); work at +1
    sign = np.where(np.real(x) < 0, (-1.0) ** n, 1.0)
    y = np.where(np.real(x) < 0, -x, x)
    d = y - 1
    small = np.abs(d) * n * n < 1e-7
    # U_n(1+d) = (n+1) + d n(n+1)(n+2)/3 + O(d^2 n^5)
    taylor = (n + 1) + d * n * (n + 1) * (n + 2) / 3.0
    # stable angle: 1 - cos t = 2 sin^2(t/2)
    t = 2 * np.arcsin(np.sqrt(-d / 2))
    with np.errstate(invalid="ignore", divide="ignore"):
        trig = np.sin((n + 1) * t) / np.sin(t)
    return sign * np.where(small | (t == 0), taylor, trig)


def _hyperbolic(n, x):
    g = joukowski_root(x)
    with np.errstate(over="ignore", invalid="ignore"):
        gp = g ** (n + 1)
        return (gp - 1 / gp) / (g - 1 / g)


def _classify(x):
    near_one = (np.abs(x - 1) < ENDPOINT_TOL) | (np.abs(x + 1) < ENDPOINT_TOL)
    re = np.real(x)
    dist_seg = np.abs(np.imag(x)) + np.maximum(np.abs(re) - 1, 0)
    on_seg = (dist_seg <= SEGMENT_TOL) & ~near_one
    return near_one, on_seg


def cheb_u(n: int, x):
    """``U_n(x)`` for integer ``n >= -1`` and complex (array) ``x``.

    ``U_{-1} = 0`` and ``U_0 = 1``.  Off the segment the value grows like
    ``|g|**n`` and overflows to ``inf`` for large ``n``; use
    :func:`cheb_u_normalized` for ratios.
    """
    if n < -1:
        raise ArgumentError(f"cheb_u needs n >= -1, got {n}")
    xa = np.asarray(x, dtype=complex)
    if n == -1:
        out = np.zeros_like(xa)
    elif n == 0:
        out = np.ones_like(xa)
    elif n <= RECURRENCE_MAX_N:
        out = _recurrence(n, xa)
    else:
        near_one, on_seg = _classify(xa)
        out = np.empty_like(xa)
        rest = ~(near_one | on_seg)
        if np.any(near_one):
            out[near_one] = _near_endpoint(n, xa[near_one])
        if np.any(on_seg):
            out[on_seg] = _trig(n, xa[on_seg])
        if np.any(rest):
            out[rest] = _hyperbolic(n, xa[rest])
    return out if out.ndim else complex(out)


def cheb_eval(n: int, x: complex) -> ChebEval:
    """Scalar :func:`cheb_u` that also reports which formula was used."""
    x = complex(x)
    if n <= RECURRENCE_MAX_N:
        method = "recurrence"
    else:
        near_one, on_seg = _classify(np.asarray(x))
        method = "trig" if (near_one or on_seg) else "hyperbolic"
    return ChebEval(n, x, cheb_u(n, x), method)


def cheb_u_trig(n: int, x):
    """Trigonometric form only (test oracle for the branch-agreement check)."""
    return _trig(n, np.asarray(x, dtype=complex))


def cheb_u_hyperbolic(n: int, x):
    """Closed power form only (test oracle for the branch-agreement check)."""
    return _hyperbolic(n, np.asarray(x, dtype=complex))


def cheb_u_sum_form(n: int, x):
    """Explicit binomial sum ``sum_j (-1)^j C(n-j, j) (2x)^(n-2j)``.

    Only meant as an independent oracle; limited to ``n <= 40``.
    """
    if n > 40:
        raise ArgumentError("cheb_u_sum_form is limited to n <= 40")
    if n == -1:
        return 0j * np.asarray(x, dtype=complex)
    x2 = 2 * np.asarray(x, dtype=complex)
    out = np.zeros_like(x2)
    for j in range(n // 2 + 1):
        out = out + (-1) ** j * comb(n - j, j) * x2 ** (n - 2 * j)
    return out if out.ndim else complex(out)


def cheb_u_normalized(k: int, x):
    """Return ``(U_k(x)/g**k, U_{k-1}(x)/g**k)`` with ``g = x + sqrt(x^2-1)``.

    Safe for arbitrarily large ``k`` off the segment, where ``|g| > 1``.
    """
    g = joukowski_root(x)
    q = 1 / g  # = x - sqrt(x^2 - 1)
    d = g - q
    uk = (g - q ** (2 * k + 1)) / d
    ukm1 = (1 - q ** (2 * k)) / d if k >= 1 else 0 * g
    return uk, ukm1


def cheb_generating_series(x, t, N: int):
    """Partial sum ``sum_{n<=N} U_n(x) t^n``.

    The full series equals ``1/(1 - 2xt + t^2)`` when ``|t| |g| < 1`` with
    ``g = x + sqrt(x^2 - 1)`` the larger root; a margin of 0.99 is enforced.
    """
    x, t = complex(x), complex(t)
    if abs(t) * abs(complex(joukowski_root(x))) >= 0.99:
        raise DomainError("generating series outside the convergence guard")
    total = 0j
    prev, cur, tp = 0j, 1 + 0j, 1 + 0j
    for _ in range(N + 1):
        total += cur * tp
        prev, cur = cur, 2 * x * cur - prev
        tp *= t
    return total
