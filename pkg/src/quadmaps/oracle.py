"""Numerical falsifiers for the symbolic machinery.

Everything here works in float64 on the homogeneous extension F and never
feeds back into classification.  Derivatives are taken along great circles
``t -> cos(t) p + sin(t) e`` through the sample point, so no chart is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotOnSphere
from .poly import HomoPolyVec
from .quadmap import QuadraticSphericalMap, bitension_field, tension_field

__all__ = [
    "SamplePlan",
    "sample_points",
    "tangent_frame",
    "fd_tension",
    "fd_laplacian",
    "symbolic_tension",
    "TensionReport",
    "tension_check",
    "convergence_ratio",
    "BitensionReport",
    "spot_check_bitension",
    "EnergyReport",
    "energy_spot_check",
]


@dataclass(frozen=True)
class SamplePlan:
    count: int = 50
    seed: int = 0
    step: float = 1e-4
    tolerance: float = 1e-5

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if not 0 < self.step < 1e-2:
            raise ValueError("step must lie in (0, 1e-2)")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


def sample_points(size: int, plan: SamplePlan) -> np.ndarray:
    rng = np.random.default_rng(plan.seed)
    pts = rng.standard_normal((plan.count, size))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def tangent_frame(p: np.ndarray) -> np.ndarray:
    """Rows form an orthonormal basis of the tangent space of the sphere at p."""
    q, _ = np.linalg.qr(p.reshape(-1, 1), mode="complete")
    return q[:, 1:].T


def _stack(qmap: QuadraticSphericalMap) -> np.ndarray:
    return np.array([[[float(v) for v in row] for row in a] for a in qmap.matrices])


def _evaluator(mats: np.ndarray):
    def f(x):
        return np.einsum("kij,i,j->k", mats, x, x)
    return f


def _check_point(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if abs(np.linalg.norm(p) - 1.0) > 1e-12:
        raise NotOnSphere(f"|p| = {np.linalg.norm(p)!r} is not 1")
    return p


def fd_laplacian(qmap: QuadraticSphericalMap, p, step: float, mats=None) -> np.ndarray:
    """Sum over a tangent frame of second derivatives of Phi along great circles."""
    p = _check_point(p)
    f = _evaluator(_stack(qmap) if mats is None else mats)
    centre = f(p)
    total = np.zeros_like(centre)
    c, s = np.cos(step), np.sin(step)
    for e in tangent_frame(p):
        total += f(c * p + s * e) - 2 * centre + f(c * p - s * e)
    return total / step**2


def fd_tension(qmap: QuadraticSphericalMap, p, plan: SamplePlan | None = None,
               mats=None) -> np.ndarray:
    """Tension field at p: the frame Laplacian of Phi projected onto T_{Phi(p)} S^n."""
    plan = plan or SamplePlan()
    p = _check_point(p)
    mats = _stack(qmap) if mats is None else mats
    lap = fd_laplacian(qmap, p, plan.step, mats)
    phi = _evaluator(mats)(p)
    return lap - np.dot(lap, phi) * phi


class _CompiledVec:
    """Float evaluator for a polynomial vector: one exponent table per component."""

    def __init__(self, vec: HomoPolyVec):
        self.parts = []
        for comp in vec:
            if comp.terms:
                exps = np.array(list(comp.terms.keys()), dtype=int)
                coeffs = np.array([float(c) for c in comp.terms.values()])
            else:
                exps = np.zeros((0, comp.nvars), dtype=int)
                coeffs = np.zeros(0)
            self.parts.append((exps, coeffs))

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.array([coeffs @ np.prod(x ** exps, axis=1) if len(coeffs) else 0.0
                         for exps, coeffs in self.parts])


def symbolic_tension(qmap: QuadraticSphericalMap):
    """Float evaluator of the degree-4 tension polynomial."""
    return _CompiledVec(tension_field(qmap))


def _rel_err(approx, exact) -> float:
    return float(np.linalg.norm(approx - exact) / max(1.0, np.linalg.norm(exact)))


@dataclass
class TensionReport:
    max_rel_error: float
    max_normal_defect: float
    passed: bool
    errors: list = field(default_factory=list)


def tension_check(qmap: QuadraticSphericalMap, plan: SamplePlan | None = None) -> TensionReport:
    """Compare finite-difference and symbolic tension at ``plan.count`` points.

    Also checks the normal part of the frame Laplacian, which must be
    ``-|d phi|^2 Phi`` with ``|d phi|^2 = 4 p^t S p - 4``.
    """
    plan = plan or SamplePlan()
    mats = _stack(qmap)
    s = np.array([[float(v) for v in row] for row in qmap.s])
    sym = symbolic_tension(qmap)
    f = _evaluator(mats)
    errors, normals = [], []
    for p in sample_points(qmap.size, plan):
        lap = fd_laplacian(qmap, p, plan.step, mats)
        phi = f(p)
        fd = lap - np.dot(lap, phi) * phi
        errors.append(_rel_err(fd, sym(p)))
        dphi_sq = 4 * p @ s @ p - 4
        normals.append(abs(np.dot(lap, phi) + dphi_sq) / max(1.0, abs(dphi_sq)))
    worst = max(errors)
    worst_normal = max(normals)
    passed = bool(worst <= plan.tolerance and worst_normal <= plan.tolerance)
    return TensionReport(float(worst), float(worst_normal), passed, errors)


def convergence_ratio(qmap: QuadraticSphericalMap, p, step: float) -> float:
    """Error at ``step`` divided by error at ``step / 2`` (about 4 for O(h^2))."""
    p = _check_point(p)
    exact = symbolic_tension(qmap)(p)
    mats = _stack(qmap)
    coarse = fd_tension(qmap, p, SamplePlan(step=step), mats)
    fine = fd_tension(qmap, p, SamplePlan(step=step / 2), mats)
    return float(np.linalg.norm(coarse - exact) / np.linalg.norm(fine - exact))


@dataclass
class BitensionReport:
    max_abs_bitension: float
    max_closed_form_discrepancy: float | None
    passed: bool


def spot_check_bitension(qmap: QuadraticSphericalMap, plan: SamplePlan | None = None,
                         tolerance: float = 1e-9) -> BitensionReport:
    """Evaluate the degree-6 bitension at unit points; compare with the
    scalar-S closed form when S is scalar."""
    plan = plan or SamplePlan()
    result = bitension_field(qmap)
    hom = _CompiledVec(result.homogenized)
    f = _evaluator(_stack(qmap))
    lap = np.array([float(v) for v in qmap.laplacian])
    worst_abs, worst_cf = 0.0, None
    for p in sample_points(qmap.size, plan):
        value = hom(p)
        worst_abs = max(worst_abs, float(np.linalg.norm(value)))
        if result.has_closed_form:
            closed = float(result.lap_coeff) * lap + float(result.phi_coeff) * f(p)
            err = _rel_err(value, closed)
            worst_cf = err if worst_cf is None else max(worst_cf, err)
    passed = bool(worst_cf is None or worst_cf <= tolerance)
    return BitensionReport(worst_abs, worst_cf, passed)


@dataclass
class EnergyReport:
    max_rel_error: float
    values: list
    passed: bool


def energy_spot_check(qmap: QuadraticSphericalMap, plan: SamplePlan | None = None
                      ) -> EnergyReport:
    """|d phi|^2 by central first differences against ``4 p^t S p - 4``."""
    plan = plan or SamplePlan()
    mats = _stack(qmap)
    f = _evaluator(mats)
    s = np.array([[float(v) for v in row] for row in qmap.s])
    h = plan.step
    c, sn = np.cos(h), np.sin(h)
    errs, values = [], []
    for p in sample_points(qmap.size, plan):
        total = 0.0
        for e in tangent_frame(p):
            d = (f(c * p + sn * e) - f(c * p - sn * e)) / (2 * sn)
            total += float(d @ d)
        expected = 4 * p @ s @ p - 4
        values.append(total)
        errs.append(float(abs(total - expected) / max(1.0, abs(expected))))
    worst = max(errs)
    return EnergyReport(worst, values, bool(worst <= plan.tolerance))
