"""Structural facts about proper biharmonic quadratic maps.

* the trace identity ``8 tr S + |lap F|^2 = 4(m+1)(m+3)``;
* ``|lap F|^2 = 2(m+1)^2`` for proper biharmonic maps;
* factorization: after an exact Householder reflection of the codomain the
  last component is ``1/sqrt2`` and the remaining ones form a harmonic map
  into ``S^{n-1}(1/sqrt2)``;
* the radius bound ``r^2 >= 1/2`` for a proper biharmonic map contained in a
  small hypersphere, and the sharper containment when ``r^2 > 1/2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import matrix as mx
from .errors import (
    ExactRotationUnavailable,
    InexactValue,
    NotInClaimedSphere,
    NotProperBiharmonic,
    RadiusBelowBound,
)
from .poly import HomoPoly, quad_from_matrix
from .quadmap import QuadraticSphericalMap, Verdict, classify

__all__ = [
    "verify_trace_identity",
    "laplacian_norm_check",
    "LaplacianNormCertificate",
    "HypersphereLocation",
    "locate_hypersphere",
    "FactorizationResult",
    "factorize",
    "HypersphereReport",
    "hypersphere_analysis",
]


def verify_trace_identity(qmap: QuadraticSphericalMap):
    """8 tr S + |lap F|^2 - 4(m+1)(m+3); zero for every quadratic map between spheres."""
    lap = qmap.laplacian
    m = qmap.m
    return 8 * mx.trace(qmap.s) + mx.dot(lap, lap) - 4 * (m + 1) * (m + 3)


def _require_proper(qmap: QuadraticSphericalMap):
    verdict = classify(qmap, "criterion").verdict
    if verdict is not Verdict.PROPER_BIHARMONIC:
        raise NotProperBiharmonic(f"{qmap!r} is {verdict}, not proper biharmonic")


@dataclass(frozen=True)
class LaplacianNormCertificate:
    norm_sq: object
    expected: int
    norm: object
    holds: bool


def laplacian_norm_check(qmap: QuadraticSphericalMap) -> LaplacianNormCertificate:
    """|lap F|^2 == 2(m+1)^2, together with |lap F| = (m+1) sqrt2."""
    _require_proper(qmap)
    lap = qmap.laplacian
    norm_sq = mx.dot(lap, lap)
    expected = 2 * (qmap.m + 1) ** 2
    try:
        norm = qmap.backend.sqrt(norm_sq)
    except InexactValue:
        norm = None
    return LaplacianNormCertificate(norm_sq, expected, norm, qmap.backend.eq(norm_sq, expected))


@dataclass(frozen=True)
class HypersphereLocation:
    """The image lies in the hyperplane <a, y> = offset with a = lap F,
    hence in a small sphere of squared radius ``radius_sq``; ``center`` is
    the foot of the perpendicular from the origin."""

    center: tuple
    radius_sq: object
    unit_normal_direction: tuple
    affine_offset: object


def locate_hypersphere(qmap: QuadraticSphericalMap) -> HypersphereLocation | None:
    """Return the forced hypersphere, or None for harmonic maps / non-scalar S.

    Tangency of the tension field gives ``<lap F, Phi> = |d0 F|^2 - 2(m+3)``,
    which is the constant ``4 alpha - 2(m+3)`` when S = alpha I.
    """
    be = qmap.backend
    if qmap.is_harmonic_criterion():
        return None
    alpha_s = qmap.s_scalar
    if alpha_s is None:
        return None
    lap = qmap.laplacian
    offset = 4 * alpha_s - 2 * (qmap.m + 3)
    norm_sq = mx.dot(lap, lap)
    radius_sq = 1 - offset * offset / norm_sq
    t = offset / norm_sq
    center = tuple(t * a for a in lap)
    return HypersphereLocation(center, be.coerce(radius_sq), lap, offset)


@dataclass(frozen=True)
class FactorizationResult:
    """Outcome of aligning lap F with the last codomain axis.

    ``rotation`` is the orthogonal matrix applied to the codomain,
    ``rotated`` the rotated map, ``psi`` the first n components as a map into
    the sphere of squared radius ``radius_sq``.
    """

    rotation: tuple
    rotated: QuadraticSphericalMap
    psi: QuadraticSphericalMap
    psi_matrices: tuple
    radius_sq: object
    last_component_constant: object
    psi_harmonic: bool
    psi_energy_density: object
    notes: list = field(default_factory=list)


def factorize(qmap: QuadraticSphericalMap) -> FactorizationResult:
    """Split a proper biharmonic map as (psi, 1/sqrt2) with psi harmonic.

    The Householder reflection sends lap F to (0, ..., 0, -|lap F|); since
    <lap F, Phi> = -(m+1) < 0 this makes the last component of the image
    positive.  |lap F| = (m+1) sqrt2, so everything stays in the exact field.
    """
    _require_proper(qmap)
    be = qmap.backend
    m = qmap.m
    lap = qmap.laplacian
    norm_sq = mx.dot(lap, lap)
    try:
        norm = be.sqrt(norm_sq)
    except InexactValue as exc:
        raise ExactRotationUnavailable(f"|lap F|^2 = {norm_sq} has no exact square root") from exc
    target = tuple([be.zero()] * qmap.n + [-norm])
    rot = mx.householder(lap, target, be)
    rotated_mats = []
    for k in range(qmap.n + 1):
        acc = mx.zeros(qmap.size, qmap.size, be)
        for l in range(qmap.n + 1):
            if rot[k][l]:
                acc = mx.add(acc, mx.scale(rot[k][l], qmap.matrices[l]))
        rotated_mats.append(acc)
    rotated = QuadraticSphericalMap(rotated_mats, be, name=qmap.name)
    notes = []
    rotated_lap = rotated.laplacian
    if not all(be.is_zero(v) for v in rotated_lap[:-1]):
        raise ExactRotationUnavailable("rotated lap F is not aligned with the last axis")
    last = mx.scalar_multiple_of_identity(rotated_mats[-1], be)
    half = be.coerce(Fraction(1, 2))
    inv_sqrt2 = be.sqrt(half)
    if last is None or not be.eq(last, inv_sqrt2):
        raise ExactRotationUnavailable(
            f"last rotated matrix is not (1/√2) I (got {rotated_mats[-1][0][0]} on the diagonal)")
    radius_sq = 1 - last * last
    notes.append(f"last component constant {last}, r^2 = {radius_sq}")
    psi_mats = tuple(rotated_mats[:-1])
    psi = QuadraticSphericalMap(psi_mats, be, radius_sq=radius_sq,
                                name=f"psi({qmap.name})" if qmap.name else None)
    harmonic = psi.is_harmonic_criterion()
    alpha_psi = psi.s_scalar
    # e(psi) = 2 (x^t S_psi x - r^2) on S^m
    energy = None if alpha_psi is None else 2 * (alpha_psi - radius_sq)
    if energy is not None:
        expected = radius_sq * (m + 1)
        notes.append(f"e(psi) = {energy}; r^2 (m+1) = {expected}")
    return FactorizationResult(rot, rotated, psi, psi_mats, radius_sq, last, harmonic, energy, notes)


@dataclass(frozen=True)
class HypersphereReport:
    case: int
    radius_sq: object
    psi_harmonic: bool
    center: tuple | None = None
    small_sphere_radius_sq: object = None
    non_full_witness: tuple | None = None
    notes: list = field(default_factory=list)


def hypersphere_analysis(qmap: QuadraticSphericalMap, claimed_radius_sq,
                         alignment=None) -> HypersphereReport:
    """Check a proper biharmonic map sitting in ``y^{n+1} = sqrt(1 - r^2)``.

    ``alignment`` is an optional orthogonal codomain matrix applied first, so
    that the constant coordinate is the last one.  Case 1 (r^2 = 1/2): the
    first n components are harmonic.  Case 2 (r^2 > 1/2): the image lies in a
    sphere of squared radius 1/2 centred at t0 lap F, t0 = -1/(2(m+1)), and a
    linear relation with zero constant term shows the map is not full.
    """
    from .quadmap import transform

    _require_proper(qmap)
    be = qmap.backend
    if alignment is not None:
        qmap = transform(qmap, v=alignment)
    m = qmap.m
    r2 = be.coerce(claimed_radius_sq)
    height_sq = 1 - r2
    last = mx.scalar_multiple_of_identity(qmap.matrices[-1], be)
    if last is None or be.sign(last) < 0 or not be.eq(last * last, height_sq):
        raise NotInClaimedSphere(
            f"last component is not the constant sqrt(1 - {r2}) on S^{m}")
    half = be.coerce(Fraction(1, 2))
    if be.sign(r2 - half) < 0:
        raise RadiusBelowBound(f"r^2 = {r2} < 1/2 for a proper biharmonic map")
    notes = []
    first = qmap.matrices[:-1]
    if be.eq(r2, half):
        harmonic = all(be.is_zero(mx.trace(a)) for a in first)
        notes.append("case 1: r^2 = 1/2, first n components traceless" if harmonic
                     else "case 1: r^2 = 1/2 but first n components are not traceless")
        return HypersphereReport(1, r2, harmonic, notes=notes)

    lap = qmap.laplacian
    # (Pi_1): <lap F, y> = -(m+1), certified as the matrix identity sum lap_k A_k = -(m+1) I
    combo = mx.zeros(qmap.size, qmap.size, be)
    for coeff, a in zip(lap, qmap.matrices):
        combo = mx.add(combo, mx.scale(coeff, a))
    if mx.scalar_multiple_of_identity(combo, be) is None or not be.eq(combo[0][0], -(m + 1)):
        raise NotInClaimedSphere("image is not contained in <lap F, y> = -(m+1)")
    t0 = be.coerce(Fraction(-1, 2 * (m + 1)))
    center = tuple(t0 * a for a in lap)
    if not be.eq(center[-1], last):
        raise NotInClaimedSphere("centre of the small sphere is not on y^{n+1} = sqrt(1 - r^2)")
    # |F - c|^2 == (1/2)|x|^4 as a polynomial identity
    norm = HomoPoly.norm_sq(qmap.size, be.one())
    total = HomoPoly.zero(qmap.size, 4)
    for c, a in zip(center, qmap.matrices):
        diff = quad_from_matrix(a, be) - norm.scale(c)
        total = total + diff * diff
    small_ok = (total - (norm * norm).scale(half)).is_zero(be)
    if not small_ok:
        raise NotInClaimedSphere("image does not lie on the sphere of radius 1/√2 about t0 lap F")
    notes.append(f"case 2: centre t0 lap F with t0 = {t0}, |F - c|^2 = 1/2")
    # <lap F + ((m+1)/c) e_{n+1}, y> = 0 on the image: a hyperplane through 0
    witness = list(lap)
    witness[-1] = witness[-1] + (m + 1) / last
    witness = tuple(witness)
    relation = mx.zeros(qmap.size, qmap.size, be)
    for coeff, a in zip(witness, qmap.matrices):
        relation = mx.add(relation, mx.scale(coeff, a))
    if any(not be.is_zero(v) for v in witness) and all(
            be.is_zero(v) for row in relation for v in row):
        notes.append("not full: image lies in the linear hyperplane <w, y> = 0")
    else:
        witness = None
    # psi into S^{n-2}(1/sqrt2): remove the centre, the remaining map is traceless
    harmonic = all(be.is_zero(mx.trace(mx.sub(a, mx.scale(c, mx.identity(qmap.size, be)))))
                   for c, a in zip(center, qmap.matrices))
    return HypersphereReport(2, r2, harmonic, center, half, witness, notes)
