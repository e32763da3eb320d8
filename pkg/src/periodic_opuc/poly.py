"""Dense complex polynomials and Laurent polynomials.

Both classes are immutable; their coefficient arrays are flagged read-only.
Evaluation broadcasts over numpy arrays of arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, DomainError

TRIM_RTOL = 1e-14


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=complex).reshape(-1)
    arr.setflags(write=False)
    return arr


def _horner(coeffs: np.ndarray, z):
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    for c in coeffs[::-1]:
        out = out * z + c
    return out


@dataclass(frozen=True, eq=False)
class ComplexPoly:
    """Polynomial ``sum_j coeffs[j] z**j`` with complex double coefficients."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = _frozen(self.coeffs)
        if arr.size == 0:
            arr = _frozen([0.0])
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def from_roots(cls, roots, lead=1.0) -> "ComplexPoly":
        c = np.array([lead], dtype=complex)
        for r in roots:
            c = np.convolve(c, [-r, 1.0])
        return cls(c)

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __call__(self, z):
        out = _horner(self.coeffs, z)
        return out if out.ndim else complex(out)

    def derivative(self) -> "ComplexPoly":
        if self.coeffs.size == 1:
            return ComplexPoly([0.0])
        return ComplexPoly(self.coeffs[1:] * np.arange(1, self.coeffs.size))

    def star(self, n: int) -> "ComplexPoly":
        """Reversed polynomial ``z**n * conj(P(1/conj(z)))``."""
        if self.degree > n:
            raise ArgumentError(f"degree {self.degree} exceeds star index {n}")
        c = np.zeros(n + 1, dtype=complex)
        m = min(self.coeffs.size, n + 1)
        c[:m] = self.coeffs[:m]
        return ComplexPoly(np.conj(c[::-1]))

    def trimmed(self, rtol: float = TRIM_RTOL) -> "ComplexPoly":
        c = self.coeffs
        scale = np.max(np.abs(c)) if c.size else 0.0
        keep = np.flatnonzero(np.abs(c) > rtol * scale)
        if not keep.size:
            return ComplexPoly([0.0])
        return ComplexPoly(c[: keep[-1] + 1])

    def roots(self) -> np.ndarray:
        return roots(self)

    def _coerce(self, other):
        if isinstance(other, ComplexPoly):
            return other.coeffs
        return np.array([other], dtype=complex)

    def __add__(self, other):
        a, b = self.coeffs, self._coerce(other)
        out = np.zeros(max(a.size, b.size), dtype=complex)
        out[: a.size] += a
        out[: b.size] += b
        return ComplexPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ComplexPoly(-self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, ComplexPoly) else -complex(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ComplexPoly):
            return ComplexPoly(np.convolve(self.coeffs, other.coeffs))
        return ComplexPoly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return ComplexPoly(self.coeffs / complex(scalar))

    def shift(self, k: int) -> "ComplexPoly":
        """Multiply by ``z**k`` (k >= 0)."""
        return ComplexPoly(np.concatenate([np.zeros(k, dtype=complex), self.coeffs]))

    def to_laurent(self, low: int = 0) -> "LaurentPoly":
        return LaurentPoly(self.coeffs, low)

    def __repr__(self):
        return f"ComplexPoly({np.array2string(self.coeffs, precision=6)})"


@dataclass(frozen=True, eq=False)
class LaurentPoly:
    """Finite Laurent series ``sum_j coeffs[j] z**(low + j)``."""

    coeffs: np.ndarray
    low: int = 0

    def __post_init__(self):
        arr = _frozen(self.coeffs)
        if arr.size == 0:
            arr = _frozen([0.0])
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "low", int(self.low))

    @classmethod
    def from_dict(cls, terms: dict) -> "LaurentPoly":
        if not terms:
            return cls([0.0], 0)
        lo, hi = min(terms), max(terms)
        c = np.zeros(hi - lo + 1, dtype=complex)
        for e, v in terms.items():
            c[e - lo] += v
        return cls(c, lo)

    @property
    def high(self) -> int:
        return self.low + self.coeffs.size - 1

    @property
    def terms(self) -> dict:
        return {self.low + j: complex(c) for j, c in enumerate(self.coeffs) if c != 0}

    def coeff(self, exponent: int) -> complex:
        j = exponent - self.low
        if 0 <= j < self.coeffs.size:
            return complex(self.coeffs[j])
        return 0j

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.low < 0 and np.any(z == 0):
            raise DomainError("Laurent polynomial with negative exponents evaluated at 0")
        out = _horner(self.coeffs, z)
        if self.low:
            with np.errstate(divide="ignore", invalid="ignore"):
                out = out * z ** self.low
        return out if out.ndim else complex(out)

    def on_circle(self, theta):
        """Evaluate at ``exp(i*theta)`` without forming large powers."""
        theta = np.asarray(theta, dtype=float)
        ex = np.arange(self.low, self.high + 1)
        out = np.exp(1j * np.multiply.outer(theta, ex)) @ self.coeffs
        return out if out.ndim else complex(out)

    def theta_derivative(self, theta, order: int = 1):
        """``d^order/dtheta^order`` of ``theta -> L(exp(i theta))``."""
        theta = np.asarray(theta, dtype=float)
        ex = np.arange(self.low, self.high + 1)
        w = self.coeffs * (1j * ex) ** order
        out = np.exp(1j * np.multiply.outer(theta, ex)) @ w
        return out if out.ndim else complex(out)

    def derivative(self) -> "LaurentPoly":
        ex = np.arange(self.low, self.high + 1)
        return LaurentPoly(self.coeffs * ex, self.low - 1)

    def _align(self, other: "LaurentPoly"):
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        a = np.zeros(hi - lo + 1, dtype=complex)
        b = np.zeros(hi - lo + 1, dtype=complex)
        a[self.low - lo: self.low - lo + self.coeffs.size] = self.coeffs
        b[other.low - lo: other.low - lo + other.coeffs.size] = other.coeffs
        return lo, a, b

    @staticmethod
    def _wrap(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, ComplexPoly):
            return other.to_laurent()
        return LaurentPoly([complex(other)], 0)

    def __add__(self, other):
        lo, a, b = self._align(self._wrap(other))
        return LaurentPoly(a + b, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(-self.coeffs, self.low)

    def __sub__(self, other):
        lo, a, b = self._align(self._wrap(other))
        return LaurentPoly(a - b, lo)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (LaurentPoly, ComplexPoly)):
            o = self._wrap(other)
            return LaurentPoly(np.convolve(self.coeffs, o.coeffs), self.low + o.low)
        return LaurentPoly(self.coeffs * complex(other), self.low)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return LaurentPoly(self.coeffs / complex(scalar), self.low)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.coeffs, self.low + k)

    def negative_part_norm(self) -> float:
        """Largest modulus among coefficients of negative powers."""
        if self.low >= 0:
            return 0.0
        return float(np.max(np.abs(self.coeffs[: min(-self.low, self.coeffs.size)])))

    def to_poly(self, atol: float | None = None) -> ComplexPoly:
        """Drop negative powers; with ``atol`` they must be below it."""
        if atol is not None and self.negative_part_norm() > atol:
            raise DomainError(
                f"negative-power residual {self.negative_part_norm():.3e} exceeds {atol:.1e}"
            )
        if self.low >= 0:
            return ComplexPoly(np.concatenate([np.zeros(self.low, dtype=complex), self.coeffs]))
        return ComplexPoly(self.coeffs[-self.low:])

    def __repr__(self):
        return f"LaurentPoly(low={self.low}, {np.array2string(self.coeffs, precision=6)})"


def roots(p: ComplexPoly) -> np.ndarray:
    """All complex roots of ``p`` with multiplicity.

    Companion-matrix eigenvalues (``numpy.roots``) followed by a couple of
    Newton polishing steps that are kept only when they reduce the residual.

    Raises
    ------
    ArgumentError
        If ``p`` is the zero polynomial or constant after trimming.
    """
    if p.is_zero():
        raise ArgumentError("roots of the zero polynomial")
    q = p.trimmed()
    if q.degree < 1:
        raise ArgumentError("roots of a constant polynomial")
    c = q.coeffs
    # numpy.roots wants highest degree first; leading zeros already trimmed
    r = np.roots(c[::-1]).astype(complex)
    dq = q.derivative()
    for _ in range(3):
        f = q(r)
        d = dq(r)
        ok = np.abs(d) > 0
        step = np.where(ok, f / np.where(ok, d, 1.0), 0.0)
        cand = r - step
        better = np.abs(q(cand)) < np.abs(f)
        r = np.where(better, cand, r)
    return np.sort_complex(r)


def chebyshev_u_laurent(k: int, delta: LaurentPoly) -> LaurentPoly:
    """Laurent coefficients of ``U_k(delta/2)`` by the three-term recurrence."""
    if k < 0:
        return LaurentPoly([0.0], 0)
    prev, cur = LaurentPoly([0.0], 0), LaurentPoly([1.0], 0)
    for _ in range(k):
        prev, cur = cur, delta * cur - prev
    return cur
