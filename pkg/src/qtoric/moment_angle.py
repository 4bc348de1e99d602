"""The moment-angle complex as an intersection of real quadrics in C^m.

The equations are built exactly from the matrix C; sampling and the rank of
the gradient frame use floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .analogous import c_matrix
from .errors import NotInPolytope, NotOnVariety, QtoricError
from .polytope import HPolytope

RESIDUAL_TOL = 1e-9
RANK_CUTOFF = 1e-8


@dataclass(frozen=True)
class QuadraticSystem:
    """``sum_k coeffs[j][k] |z_k|^2 = constants[j]`` for each row ``j``."""

    num_complex_vars: int
    coeffs: tuple
    constants: tuple

    @property
    def m(self) -> int:
        return self.num_complex_vars

    @property
    def num_equations(self) -> int:
        return len(self.coeffs)

    def residuals(self, z: Sequence[complex]) -> np.ndarray:
        """Relative residual of each equation at ``z``."""
        sq = np.abs(np.asarray(z, dtype=complex)) ** 2
        c = np.array([[float(x) for x in row] for row in self.coeffs])
        const = np.array([float(x) for x in self.constants])
        lhs = c @ sq
        scale = np.maximum(1.0, np.maximum(np.abs(c) @ sq, np.abs(const)))
        return np.abs(lhs - const) / scale


def quadratic_system(P: HPolytope) -> QuadraticSystem:
    C = c_matrix(P)
    b = P.b
    constants = tuple(sum((c * bk for c, bk in zip(row, b)), Fraction(0)) for row in C)
    return QuadraticSystem(P.m, tuple(tuple(row) for row in C), constants)


def dimension_check(system: QuadraticSystem) -> int:
    """Dimension ``2m - (m - n) = m + n`` of the solution set."""
    return 2 * system.m - system.num_equations


def sample_point(P: HPolytope, x: Sequence, angles: Sequence[float]) -> np.ndarray:
    """``z_k = sqrt(y_k) exp(i theta_k)`` with ``y = A x + b``."""
    A = np.array([[float(a) for a in row] for row in P.A])
    b = np.array([float(v) for v in P.b])
    y = A @ np.asarray([float(c) for c in x]) + b
    if np.any(y < -1e-12):
        raise NotInPolytope("point violates an inequality")
    if len(angles) != P.m:
        raise ValueError(f"need {P.m} angles")
    return np.sqrt(np.clip(y, 0.0, None)) * np.exp(1j * np.asarray(angles, dtype=float))


def sample_points(P: HPolytope, count: int, seed: int = 0) -> list:
    """``count`` points of the moment-angle complex over uniform points of P."""
    rng = np.random.default_rng(seed)
    pts = np.array([[float(c) for c in x] for _, x in P.vertices])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    A = np.array([[float(a) for a in row] for row in P.A])
    b = np.array([float(v) for v in P.b])
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000 * count + 1000:
            raise QtoricError("rejection sampling failed")
        x = rng.uniform(lo, hi)
        if np.all(A @ x + b >= 0):
            out.append(sample_point(P, x, rng.uniform(0.0, 2 * np.pi, P.m)))
    return out


def gradient_matrix(system: QuadraticSystem, z: Sequence[complex]) -> np.ndarray:
    """Rows ``2 (c_j1 q_1, c_j1 r_1, ..., c_jm q_m, c_jm r_m)``."""
    z = np.asarray(z, dtype=complex)
    qr = np.empty(2 * len(z))
    qr[0::2], qr[1::2] = z.real, z.imag
    c = np.array([[float(x) for x in row] for row in system.coeffs])
    return 2 * np.repeat(c, 2, axis=1) * qr


@dataclass
class RankReport:
    rank: int
    expected: int
    max_residual: float
    smallest_singular_value: float

    @property
    def ok(self) -> bool:
        return self.rank == self.expected


def jacobian_rank(system: QuadraticSystem, z: Sequence[complex]) -> RankReport:
    res = float(system.residuals(z).max(initial=0.0))
    if res >= RESIDUAL_TOL:
        raise NotOnVariety(f"residual {res:.3g} exceeds {RESIDUAL_TOL}")
    sv = np.linalg.svd(gradient_matrix(system, z), compute_uv=False)
    return RankReport(int(np.sum(sv > RANK_CUTOFF)), system.num_equations, res, float(sv.min(initial=np.inf)))


def verify_samples(P: HPolytope, count: int = 100, seed: int = 0) -> dict:
    """Residuals and gradient ranks at seeded random points."""
    system = quadratic_system(P)
    worst_res, failures, min_sv = 0.0, 0, np.inf
    for z in sample_points(P, count, seed):
        try:
            rep = jacobian_rank(system, z)
        except NotOnVariety:
            failures += 1
            worst_res = max(worst_res, float(system.residuals(z).max()))
            continue
        worst_res = max(worst_res, rep.max_residual)
        min_sv = min(min_sv, rep.smallest_singular_value)
        failures += not rep.ok
    return {
        "samples": count,
        "seed": seed,
        "max_residual": worst_res,
        "min_singular_value": float(min_sv),
        "failures": failures,
        "ok": failures == 0,
    }


def format_system(system: QuadraticSystem) -> list:
    """Human-readable equations, e.g. ``|z1|^2 + |z3|^2 = 1``."""
    lines = []
    for row, const in zip(system.coeffs, system.constants):
        terms = []
        for k, c in enumerate(row, start=1):
            if c == 0:
                continue
            mag = abs(c)
            coef = "" if mag == 1 else linalg.format_rational(mag) + "*"
            sign = "-" if c < 0 else "+"
            terms.append((sign, f"{coef}|z{k}|^2"))
        text = " ".join(f"{s} {t}" for s, t in terms)
        text = text[2:] if text.startswith("+ ") else "-" + text[2:]
        lines.append(f"{text} = {linalg.format_rational(const)}")
    return lines
