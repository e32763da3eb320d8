"""Randomized property suite behind ``periodic-opuc verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConsistencyError, OpucError
from .kernels import bessel_jstar, cd_kernel_direct, cd_kernel_fast
from .periodic import closed_form_phi
from .schur import (
    caratheodory_F,
    cheb_period_identity,
    classify_zeros_phi_diff,
    generating_function_residual,
    wall_from_recursion,
    schur_f,
    wall_polys,
)
from .szego import VerblunskyPeriod, eval_quad_at

TOLERANCES = {
    "closed_form_rel": 1e-9,
    "wronskian": 1e-10,
    "cd_kernel_rel": 1e-8,
    "wall_rel": 1e-9,
    "schur_caratheodory": 1e-8,
    "generating_function": 1e-8,
    "cheb_identity_rel": 1e-9,
    "jstar_symmetry": 1e-12,
}


def random_period(rng: np.random.Generator, p: int, radius: float = 0.6) -> VerblunskyPeriod:
    """``p`` coefficients uniform in the disk of the given radius."""
    r = radius * np.sqrt(rng.uniform(0, 1, p))
    return VerblunskyPeriod(tuple(r * np.exp(2j * np.pi * rng.uniform(0, 1, p))))


@dataclass
class PropertyResult:
    name: str
    max_residual: float = 0.0
    tolerance: float = 0.0
    checks: int = 0
    failure: dict | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def record(self, residual: float, case: dict):
        self.checks += 1
        if not math.isfinite(residual):
            residual = math.inf
        self.max_residual = max(self.max_residual, residual)
        if residual > self.tolerance and self.failure is None:
            self.failure = {"residual": residual, **case}

    def fail(self, message: str, case: dict):
        self.checks += 1
        if self.failure is None:
            self.failure = {"error": message, **case}


@dataclass
class VerifySummary:
    seed: int
    trials: int
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "properties": [
                {"name": r.name, "passed": r.passed, "checks": r.checks,
                 "max_residual": r.max_residual, "tolerance": r.tolerance,
                 "failure": r.failure}
                for r in self.results
            ],
        }


def _rel(a, b) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def run_properties(periods, rng: np.random.Generator, *, psi_scale: float = 1.0,
                   seed: int = 0) -> VerifySummary:
    """Run every property on each period in ``periods``.

    ``psi_scale != 1`` injects a wrong second-kind normalization into the
    Wall check, which must then fail.
    """
    tol = TOLERANCES
    props = {name: PropertyResult(name, tolerance=t) for name, t in [
        ("closed_form_vs_recursion", tol["closed_form_rel"]),
        ("wronskian_identity", tol["wronskian"]),
        ("cd_kernel_fast_vs_direct", tol["cd_kernel_rel"]),
        ("wall_vs_recursion", tol["wall_rel"]),
        ("schur_caratheodory", tol["schur_caratheodory"]),
        ("generating_function", tol["generating_function"]),
        ("cheb_period_identity", tol["cheb_identity_rel"]),
        ("zero_classification", 0.0),
        ("jstar_symmetry", tol["jstar_symmetry"]),
    ]}
    periods = list(periods)
    for V in periods:
        case = {"alphas": V.to_pairs()}
        p = V.effective_p

        for _ in range(5):
            z = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform())
            k = int(rng.integers(0, max(1, 200 // p)))
            s = int(rng.integers(0, p))
            f, fs = closed_form_phi(V, k, s, z)
            of, ofs, og, ogs = eval_quad_at(V, k * p + s, z)
            props["closed_form_vs_recursion"].record(
                max(_rel(f, of), _rel(fs, ofs)), {**case, "k": k, "s": s, "z": [z.real, z.imag]})
            wr = ogs * of + og * ofs - 2 * z ** (k * p + s)
            scale = max(abs(ogs * of), abs(og * ofs), 1.0)
            props["wronskian_identity"].record(abs(wr) / scale,
                                               {**case, "n": k * p + s, "z": [z.real, z.imag]})

        for _ in range(3):
            n = int(rng.integers(1, 300))
            z = np.exp(2j * np.pi * rng.uniform()) * rng.uniform(0.7, 1.3)
            w = np.exp(2j * np.pi * rng.uniform()) * rng.uniform(0.7, 1.3)
            props["cd_kernel_fast_vs_direct"].record(
                _rel(cd_kernel_fast(V, n, z, w), cd_kernel_direct(V, n, z, w)),
                {**case, "n": n, "z": [z.real, z.imag], "w": [w.real, w.imag]})

        for k in (1, 2, 5):
            try:
                W = wall_polys(V, k, psi_scale=psi_scale)
            except ConsistencyError as exc:
                props["wall_vs_recursion"].fail(str(exc), {**case, "k": k, "psi_scale": psi_scale})
                continue
            P = wall_from_recursion(V, k * p - 1)
            scale = max(1.0, float(np.max(np.abs(P.B.coeffs))))
            err = max(np.max(np.abs(W.A.coeffs - P.A.coeffs)), np.max(np.abs(W.B.coeffs - P.B.coeffs)))
            props["wall_vs_recursion"].record(float(err) / scale, {**case, "k": k})

        zs = 0.9 * np.sqrt(rng.uniform(0, 1, 20)) * np.exp(2j * np.pi * rng.uniform(0, 1, 20))
        f = schur_f(V, zs)
        F = caratheodory_F(V, zs)
        bad = (np.abs(f) >= 1) | (F.real <= 0)
        resid = float(np.max(np.abs(F - (1 + zs * f) / (1 - zs * f))))
        if np.any(bad):
            props["schur_caratheodory"].fail("|f| >= 1 or Re F <= 0 inside the disk", case)
        else:
            props["schur_caratheodory"].record(resid, case)

        z = np.exp(2j * np.pi * rng.uniform())
        t = 0.2 * np.exp(2j * np.pi * rng.uniform())
        try:
            r = generating_function_residual(V, z, t, 60)
            props["generating_function"].record(r, {**case, "z": [z.real, z.imag], "t": [t.real, t.imag]})
        except OpucError:
            pass  # outside the guard for this draw

        m = int(rng.integers(2, 4))
        k = int(rng.integers(1, 21))
        z = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.uniform())
        lhs, rhs = cheb_period_identity(V, m, k, z)
        props["cheb_period_identity"].record(abs(lhs - rhs) / max(abs(lhs), 1.0),
                                             {**case, "m": m, "k": k, "z": [z.real, z.imag]})

        if V.p <= 4:
            for k in range(1, 6):
                try:
                    classify_zeros_phi_diff(V, k)
                    props["zero_classification"].record(0.0, {**case, "k": k})
                except OpucError as exc:
                    props["zero_classification"].fail(str(exc), {**case, "k": k})

        a = complex(*rng.uniform(-10, 10, 2))
        b = complex(*rng.uniform(-10, 10, 2))
        for s_ in (0.5, -0.5):
            props["jstar_symmetry"].record(
                _rel(bessel_jstar(s_, a, b), bessel_jstar(s_, b, a)),
                {"s": s_, "a": [a.real, a.imag], "b": [b.real, b.imag]})

    return VerifySummary(seed=seed, trials=len(periods), results=list(props.values()))


def verify(alphas: VerblunskyPeriod | None = None, *, seed: int = 42, trials: int = 10,
           p: int = 4, psi_scale: float = 1.0) -> VerifySummary:
    """Property suite on ``alphas`` or on ``trials`` random periods of length ``p``."""
    rng = np.random.default_rng(seed)
    periods = [alphas] if alphas is not None else [random_period(rng, p) for _ in range(trials)]
    return run_properties(periods, rng, psi_scale=psi_scale, seed=seed)
